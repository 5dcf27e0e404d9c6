#include "tsteer/field.hpp"

#include <algorithm>
#include <cmath>

#include "tsteer/fft.hpp"

namespace tsteer {

double Vec2::norm() const { return std::hypot(x, y); }

ScalarField ScalarField::zero(GridSpec g) {
    ScalarField f;
    f.grid_ = g;
    f.vals_.assign(g.size(), 0.0);
    f.hat_.assign(g.spectral_size(), {0.0, 0.0});
    return f;
}

ScalarField ScalarField::from_values(GridSpec g, std::vector<double> vals) {
    ScalarField f;
    f.grid_ = g;
    f.vals_ = std::move(vals);
    f.hat_.resize(g.spectral_size());
    Fft::get(g.n).forward(f.vals_.data(), f.hat_.data());
    return f;
}

ScalarField ScalarField::from_spectral(GridSpec g, std::vector<std::complex<double>> hat) {
    ScalarField f;
    f.grid_ = g;
    f.hat_ = std::move(hat);
    f.vals_.resize(g.size());
    Fft::get(g.n).inverse(f.hat_.data(), f.vals_.data());
    return f;
}

std::complex<double> ScalarField::coeff(int l1, int l2) const {
    int n = grid_.n;
    bool conj = l2 < 0 || (l2 == 0 && l1 < 0);
    int a = conj ? -l1 : l1;
    int b = conj ? -l2 : l2;
    int i1 = a >= 0 ? a : a + n;
    std::complex<double> c = hat_[static_cast<std::size_t>(i1) * (n / 2 + 1) + b];
    return conj ? std::conj(c) : c;
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : vals_) m = std::max(m, std::fabs(v));
    return m;
}

bool ScalarField::is_mean_free(double rel_tol) const {
    double scale = 0.0;
    for (const auto& c : hat_) scale = std::max(scale, std::abs(c));
    return std::fabs(mean()) <= rel_tol * std::max(scale, 1e-300);
}

ScalarField ScalarField::without_mean() const {
    auto hat = hat_;
    if (!hat.empty()) hat[0] = {0.0, 0.0};
    return from_spectral(grid_, std::move(hat));
}

ScalarField ScalarField::band_limited(int lmax) const {
    int n = grid_.n;
    auto hat = hat_;
    for (int i1 = 0; i1 < n; ++i1) {
        int k1 = wavenumber(i1, n);
        for (int i2 = 0; i2 <= n / 2; ++i2) {
            if (std::abs(k1) > lmax || i2 > lmax) hat[static_cast<std::size_t>(i1) * (n / 2 + 1) + i2] = {0.0, 0.0};
        }
    }
    return from_spectral(grid_, std::move(hat));
}

ScalarField ScalarField::translated(double s1, double s2) const {
    int n = grid_.n;
    auto hat = hat_;
    for (int i1 = 0; i1 < n; ++i1) {
        int k1 = wavenumber(i1, n);
        for (int i2 = 0; i2 <= n / 2; ++i2) {
            double phase = -(k1 * s1 + i2 * s2);
            hat[static_cast<std::size_t>(i1) * (n / 2 + 1) + i2] *= std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
    return from_spectral(grid_, std::move(hat));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    std::vector<double> v(a.vals_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.vals_[i] + b.vals_[i];
    return ScalarField::from_values(a.grid_, std::move(v));
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    std::vector<double> v(a.vals_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.vals_[i] - b.vals_[i];
    return ScalarField::from_values(a.grid_, std::move(v));
}

ScalarField operator*(double c, const ScalarField& a) {
    std::vector<double> v(a.vals_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * a.vals_[i];
    return ScalarField::from_values(a.grid_, std::move(v));
}

}  // namespace tsteer
