#pragma once

#include <complex>
#include <random>
#include <vector>

#include "tsteer/field.hpp"

namespace tsteer::testutil {

// Random real field with modes |l|_inf <= lmax and zero mean.
inline ScalarField random_band_field(GridSpec g, int lmax, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    int n = g.n;
    std::vector<std::complex<double>> hat(g.spectral_size(), {0.0, 0.0});
    for (int i1 = 0; i1 < n; ++i1) {
        int k1 = wavenumber(i1, n);
        if (std::abs(k1) > lmax) continue;
        for (int i2 = 0; i2 <= lmax; ++i2) {
            if (k1 == 0 && i2 == 0) continue;
            hat[static_cast<std::size_t>(i1) * (n / 2 + 1) + i2] = {dist(rng), dist(rng)};
        }
    }
    // Restore conjugate symmetry on the k2 = 0 column.
    for (int k1 = 1; k1 <= lmax; ++k1) {
        std::size_t pos = static_cast<std::size_t>(k1) * (n / 2 + 1);
        std::size_t neg = static_cast<std::size_t>(n - k1) * (n / 2 + 1);
        hat[neg] = std::conj(hat[pos]);
    }
    return ScalarField::from_spectral(g, std::move(hat));
}

// Grid quadrature of f^2 (trapezoid = exact spectral quadrature here).
inline double quadrature_l2(const ScalarField& f) {
    long double acc = 0.0L;
    for (double v : f.values()) acc += static_cast<long double>(v) * v;
    double cell = f.grid().spacing() * f.grid().spacing();
    return std::sqrt(static_cast<double>(acc) * cell);
}

}  // namespace tsteer::testutil
