#pragma once

#include <cstddef>

#include "tsteer/errors.hpp"
#include "tsteer/numeric.hpp"

namespace tsteer {

// Uniform periodic grid on [0, 2*pi)^2 with nodes x_ij = (2*pi*i/n, 2*pi*j/n).
struct GridSpec {
    int n = 0;

    static GridSpec make(int n) {
        if (n < 32 || (n & (n - 1)) != 0) fail(Errc::ConfigError, "grid size must be a power of two >= 32");
        return GridSpec{n};
    }

    double spacing() const { return kTwoPi / n; }
    double node(int i) const { return kTwoPi * static_cast<double>(i) / n; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n; }
    std::size_t spectral_size() const { return static_cast<std::size_t>(n) * (n / 2 + 1); }
    int dealias_limit() const { return n / 3; }

    bool operator==(const GridSpec&) const = default;
};

// Signed wavenumber for row index of an n-point transform.
inline int wavenumber(int idx, int n) { return idx <= n / 2 ? idx : idx - n; }

}  // namespace tsteer
