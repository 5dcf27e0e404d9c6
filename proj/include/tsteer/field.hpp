#pragma once

#include <complex>
#include <vector>

#include "tsteer/grid.hpp"

namespace tsteer {

// Real scalar field on the periodic grid, kept in both physical samples and
// conjugate-symmetric spectral coefficients (exp(i l.x) amplitudes). Immutable
// after construction; all operations return new fields.
class ScalarField {
  public:
    ScalarField() = default;

    static ScalarField zero(GridSpec g);
    static ScalarField from_values(GridSpec g, std::vector<double> vals);
    static ScalarField from_spectral(GridSpec g, std::vector<std::complex<double>> hat);

    template <typename F>
    static ScalarField sample(GridSpec g, const F& f) {
        std::vector<double> v(g.size());
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) v[static_cast<std::size_t>(i) * g.n + j] = f(g.node(i), g.node(j));
        return from_values(g, std::move(v));
    }

    const GridSpec& grid() const { return grid_; }
    const std::vector<double>& values() const { return vals_; }
    const std::vector<std::complex<double>>& spectral() const { return hat_; }

    double at(int i, int j) const { return vals_[static_cast<std::size_t>(i) * grid_.n + j]; }

    // Coefficient of exp(i(l1 x1 + l2 x2)), any |l1|,|l2| <= n/2.
    std::complex<double> coeff(int l1, int l2) const;

    double mean() const { return hat_.empty() ? 0.0 : hat_[0].real(); }
    double integral() const { return 4.0 * kPi * kPi * mean(); }
    double max_abs() const;
    bool is_mean_free(double rel_tol = 1e-12) const;

    ScalarField without_mean() const;
    ScalarField dealiased() const { return band_limited(grid_.dealias_limit()); }
    ScalarField band_limited(int lmax) const;
    ScalarField translated(double s1, double s2) const;  // f(. - s)

    friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
    friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
    friend ScalarField operator*(double c, const ScalarField& a);

  private:
    GridSpec grid_;
    std::vector<double> vals_;
    std::vector<std::complex<double>> hat_;
};

struct Vec2 {
    double x = 0.0, y = 0.0;
    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double c) const { return {x * c, y * c}; }
    double norm() const;
};

inline Vec2 operator*(double c, const Vec2& v) { return v * c; }

// Pair of scalar components (u1, u2).
struct VectorField2 {
    ScalarField u1, u2;

    const GridSpec& grid() const { return u1.grid(); }
    Vec2 mean() const { return {u1.mean(), u2.mean()}; }
    Vec2 integral() const { return {u1.integral(), u2.integral()}; }

    template <typename F>
    static VectorField2 sample(GridSpec g, const F& f) {
        std::vector<double> a(g.size()), b(g.size());
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                Vec2 v = f(g.node(i), g.node(j));
                a[static_cast<std::size_t>(i) * g.n + j] = v.x;
                b[static_cast<std::size_t>(i) * g.n + j] = v.y;
            }
        return {ScalarField::from_values(g, std::move(a)), ScalarField::from_values(g, std::move(b))};
    }
};

}  // namespace tsteer
