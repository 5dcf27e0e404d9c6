#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace tsteer {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.1415926535897932384626433832795;

// Wraps into [0, 2*pi).
inline double wrap_2pi(double x) {
    double y = std::fmod(x, kTwoPi);
    if (y < 0.0) y += kTwoPi;
    return y;
}

// Wraps into (-pi, pi].
inline double wrap_pm_pi(double x) {
    double y = wrap_2pi(x);
    return (y > kPi) ? y - kTwoPi : y;
}

// Distance on the circle of circumference 2*pi.
inline double circle_dist(double a, double b) { return std::fabs(wrap_pm_pi(a - b)); }

// C-infinity transition machinery. flat_exp vanishes with all derivatives at
// s = 0; the resulting steps have exp(-c sqrt(k)) Fourier tails, the best
// behaved of the classic compactly supported families at desk-scale k.
inline double flat_exp(double s) {
    if (s <= 1e-12) return 0.0;
    double e = -1.0 / s;
    return (e < -700.0) ? 0.0 : std::exp(e);
}

inline double flat_exp_deriv(double s) {
    if (s <= 1e-12) return 0.0;
    double e = -1.0 / s;
    if (e < -700.0) return 0.0;
    return std::exp(e) / (s * s);
}

// Monotone C-infinity step: 0 for s <= 0, 1 for s >= 1, strictly increasing on (0,1).
inline double smoothstep01(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    double p = flat_exp(s), q = flat_exp(1.0 - s);
    return p / (p + q);
}

inline double smoothstep01_deriv(double s) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    double p = flat_exp(s), q = flat_exp(1.0 - s);
    double dp = flat_exp_deriv(s), dq = flat_exp_deriv(1.0 - s);
    double den = (p + q) * (p + q);
    return (dp * q + p * dq) / den;
}

// Unit-mass bump on (0,1): derivative of smoothstep01, so the cumulative
// integral is available in closed form.
inline double unit_bump01(double s) { return smoothstep01_deriv(s); }
inline double unit_bump01_cumulative(double s) { return smoothstep01(s); }

// integral of smoothstep01 over [0, s]; table-backed, ~1e-13 accurate;
// smoothstep01_integral(1) = 1/2 exactly by symmetry
double smoothstep01_integral(double s);

// Compactly supported bump on (0,1), peak value 1 at s = 1/2. Not normalized.
inline double bump01(double s) {
    if (s <= 1e-12 || s >= 1.0 - 1e-12) return 0.0;
    double e = 8.0 - 1.0 / (s * s) - 1.0 / ((1.0 - s) * (1.0 - s));
    return (e < -700.0) ? 0.0 : std::exp(e);
}

// Pairwise summation with long double accumulators; keeps grid means near
// machine precision even for fields with values of order 1e3.
long double pairwise_sum(std::span<const double> x);
inline double accurate_sum(std::span<const double> x) { return static_cast<double>(pairwise_sum(x)); }

// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_rule(int npoints);  // supported: 2, 3, 4, 8

// Integrates f over [a, b] with a single Gauss panel.
template <typename F>
double gauss_panel(const F& f, double a, double b, int npoints) {
    const GaussRule& r = gauss_rule(npoints);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t q = 0; q < r.nodes.size(); ++q) acc += r.weights[q] * f(mid + half * r.nodes[q]);
    return acc * half;
}

// Merges sorted breakpoints into [a, b], deduplicating within tol.
std::vector<double> merge_breakpoints(double a, double b, std::span<const double> pts, double tol = 1e-14);

}  // namespace tsteer
