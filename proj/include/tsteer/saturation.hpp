#pragma once

#include <vector>

#include "tsteer/modes.hpp"

namespace tsteer {

// Finite mode set K in Z^2 \ {0}; drives N = 2|K| real control channels.
struct GeneratorSet {
    std::vector<Mode> modes;

    int channel_count() const { return static_cast<int>(2 * modes.size()); }

    static GeneratorSet make(std::vector<Mode> modes);
};

// True iff the integer span of E is all of Z^2 (gcd of all 2x2 minors is 1).
bool is_generator(const GeneratorSet& E);

// E_0 = E u (-E); E_j = E_{j-1} u { l1 + l2 : l1 in E_{j-1}, l2 in E_0, l1 not
// parallel to l2 }. Each set is deduplicated and sorted lexicographically.
std::vector<std::vector<Mode>> saturation_sequence(const GeneratorSet& E, int j_max);

// Product-to-sum decomposition for a non-parallel pair:
//   s_{l1+l2} = s_{l1} c_{l2} + c_{l1} s_{l2}
//   c_{l1+l2} = c_{l1} c_{l2} - s_{l1} s_{l2}
struct TrigExpansion {
    Mode l1, l2;
    double sin_sc = 1.0;  // coefficient of s_{l1} c_{l2} in s_{l1+l2}
    double sin_cs = 1.0;  // coefficient of c_{l1} s_{l2} in s_{l1+l2}
    double cos_cc = 1.0;  // coefficient of c_{l1} c_{l2} in c_{l1+l2}
    double cos_ss = -1.0; // coefficient of s_{l1} s_{l2} in c_{l1+l2}
};

TrigExpansion trig_expand(Mode l1, Mode l2);  // ParallelModes when l1 || l2

}  // namespace tsteer
