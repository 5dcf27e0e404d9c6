#include "tsteer/saturation.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tsteer/errors.hpp"

namespace tsteer {

GeneratorSet GeneratorSet::make(std::vector<Mode> modes) {
    // keep the caller's order: it fixes the channel enumeration
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (modes[i].is_zero()) fail(Errc::ConfigError, "generator sets exclude the zero mode");
        for (std::size_t j = i + 1; j < modes.size(); ++j)
            if (modes[i] == modes[j]) fail(Errc::ConfigError, "generator modes must be distinct");
    }
    if (modes.empty()) fail(Errc::ConfigError, "generator set is empty");
    return GeneratorSet{std::move(modes)};
}

bool is_generator(const GeneratorSet& E) {
    long long g = 0;
    for (std::size_t i = 0; i < E.modes.size(); ++i)
        for (std::size_t j = i + 1; j < E.modes.size(); ++j)
            g = std::gcd(g, std::llabs(cross(E.modes[i], E.modes[j])));
    return g == 1;
}

std::vector<std::vector<Mode>> saturation_sequence(const GeneratorSet& E, int j_max) {
    if (j_max < 0 || j_max > 10) fail(Errc::BudgetExceeded, "saturation sequence supports j_max <= 10");
    std::set<Mode> base;
    for (const Mode& m : E.modes) {
        base.insert(m);
        base.insert(-m);
    }
    std::vector<std::vector<Mode>> out;
    out.emplace_back(base.begin(), base.end());
    std::set<Mode> cur = base;
    for (int j = 1; j <= j_max; ++j) {
        std::set<Mode> next = cur;
        for (const Mode& l1 : cur)
            for (const Mode& l2 : base)
                if (!parallel(l1, l2)) next.insert(l1 + l2);
        out.emplace_back(next.begin(), next.end());
        cur = std::move(next);
    }
    return out;
}

TrigExpansion trig_expand(Mode l1, Mode l2) {
    if (parallel(l1, l2)) fail(Errc::ParallelModes, "trig expansion requires non-parallel modes");
    TrigExpansion e;
    e.l1 = l1;
    e.l2 = l2;
    return e;
}

}  // namespace tsteer
