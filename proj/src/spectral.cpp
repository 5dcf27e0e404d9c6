#include "tsteer/spectral.hpp"

#include <cmath>

#include "tsteer/errors.hpp"

namespace tsteer {

namespace {

void require_mean_free(const ScalarField& z, const char* op) {
    double norm = sobolev_norm(z, 0);
    if (std::fabs(z.integral()) > 1e-12 * std::max(norm, 1e-300) && norm > 0.0)
        fail(Errc::NonZeroMean, std::string(op) + " requires an average-free input");
}

}  // namespace

ScalarField derivative(const ScalarField& f, int axis) {
    const GridSpec& g = f.grid();
    int n = g.n;
    auto hat = f.spectral();
    for (int i1 = 0; i1 < n; ++i1) {
        int k1 = wavenumber(i1, n);
        for (int i2 = 0; i2 <= n / 2; ++i2) {
            double k = axis == 0 ? static_cast<double>(k1) : static_cast<double>(i2);
            auto& c = hat[static_cast<std::size_t>(i1) * (n / 2 + 1) + i2];
            c = std::complex<double>(0.0, k) * c;
        }
    }
    return ScalarField::from_spectral(g, std::move(hat));
}

ScalarField laplacian(const ScalarField& f) {
    const GridSpec& g = f.grid();
    int n = g.n;
    auto hat = f.spectral();
    for (int i1 = 0; i1 < n; ++i1) {
        int k1 = wavenumber(i1, n);
        for (int i2 = 0; i2 <= n / 2; ++i2) {
            double k2 = static_cast<double>(k1) * k1 + static_cast<double>(i2) * i2;
            hat[static_cast<std::size_t>(i1) * (n / 2 + 1) + i2] *= -k2;
        }
    }
    return ScalarField::from_spectral(g, std::move(hat));
}

ScalarField solve_poisson(const ScalarField& z) {
    require_mean_free(z, "solve_poisson");
    const GridSpec& g = z.grid();
    int n = g.n;
    auto hat = z.spectral();
    for (int i1 = 0; i1 < n; ++i1) {
        int k1 = wavenumber(i1, n);
        for (int i2 = 0; i2 <= n / 2; ++i2) {
            double k2 = static_cast<double>(k1) * k1 + static_cast<double>(i2) * i2;
            auto& c = hat[static_cast<std::size_t>(i1) * (n / 2 + 1) + i2];
            c = (k2 == 0.0) ? std::complex<double>(0.0, 0.0) : c / k2;
        }
    }
    return ScalarField::from_spectral(g, std::move(hat));
}

VectorField2 biot_savart(const ScalarField& z, Vec2 A) {
    require_mean_free(z, "biot_savart");
    const GridSpec& g = z.grid();
    int n = g.n;
    std::vector<std::complex<double>> h1(g.spectral_size()), h2(g.spectral_size());
    const auto& zh = z.spectral();
    for (int i1 = 0; i1 < n; ++i1) {
        int k1 = wavenumber(i1, n);
        for (int i2 = 0; i2 <= n / 2; ++i2) {
            std::size_t idx = static_cast<std::size_t>(i1) * (n / 2 + 1) + i2;
            double k2 = static_cast<double>(k1) * k1 + static_cast<double>(i2) * i2;
            if (k2 == 0.0) {
                h1[idx] = {0.0, 0.0};
                h2[idx] = {0.0, 0.0};
                continue;
            }
            std::complex<double> phi = zh[idx] / k2;
            h1[idx] = std::complex<double>(0.0, i2) * phi;    //  d2 phi
            h2[idx] = std::complex<double>(0.0, -k1) * phi;   // -d1 phi
        }
    }
    h1[0] = {A.x / (4.0 * kPi * kPi), 0.0};
    h2[0] = {A.y / (4.0 * kPi * kPi), 0.0};
    return {ScalarField::from_spectral(g, std::move(h1)), ScalarField::from_spectral(g, std::move(h2))};
}

ScalarField curl(const VectorField2& u) { return derivative(u.u2, 0) - derivative(u.u1, 1); }

ScalarField divergence(const VectorField2& u) { return derivative(u.u1, 0) + derivative(u.u2, 1); }

double sobolev_norm(const ScalarField& f, int m) {
    if (m < 0 || m > 4) fail(Errc::UnsupportedOrder, "sobolev_norm supports only 0 <= m <= 4");
    const GridSpec& g = f.grid();
    int n = g.n;
    const auto& hat = f.spectral();
    long double acc = 0.0L;
    for (int i1 = 0; i1 < n; ++i1) {
        int k1 = wavenumber(i1, n);
        for (int i2 = 0; i2 <= n / 2; ++i2) {
            std::size_t idx = static_cast<std::size_t>(i1) * (n / 2 + 1) + i2;
            long double a2 = std::norm(hat[idx]);
            // Half-plane storage: columns 0 < i2 < n/2 represent two conjugate modes.
            long double mult = (i2 == 0 || i2 == n / 2) ? 1.0L : 2.0L;
            long double w = 1.0L + static_cast<long double>(k1) * k1 + static_cast<long double>(i2) * i2;
            long double wm = 1.0L;
            for (int p = 0; p < m; ++p) wm *= w;
            acc += mult * wm * a2;
        }
    }
    return std::sqrt(static_cast<double>(acc) * 4.0 * kPi * kPi);
}

double sobolev_norm(const VectorField2& u, int m) {
    double a = sobolev_norm(u.u1, m), b = sobolev_norm(u.u2, m);
    return std::sqrt(a * a + b * b);
}

double divergence_residual(const VectorField2& u) {
    double div = sobolev_norm(divergence(u), 0);
    double scale = std::max(sobolev_norm(u, 1), 1e-300);
    return div / scale;
}

}  // namespace tsteer
