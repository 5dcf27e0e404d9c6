#include "tsteer/cutoffs.hpp"

#include <cmath>
#include <complex>

#include "tsteer/errors.hpp"

namespace tsteer {

ReferenceCutoff::ReferenceCutoff(const CoveringSpec& cov) {
    l_K_ = cov.l_K;
    S_ = cov.shift();
    rise_ = l_K_ - S_;  // = 2*pi/(K - sqrt(K))
    double K = static_cast<double>(cov.K);
    fall_lo_ = l_K_ - 1.0 / K;
    fall_hi_ = l_K_ - 0.5 / K;
}

double ReferenceCutoff::mu_hat(double s) const {
    if (s <= 0.0 || s >= fall_hi_) return 0.0;
    if (s < rise_) return smoothstep01(s / rise_);
    if (s <= fall_lo_) return 1.0;
    return smoothstep01((fall_hi_ - s) / (fall_hi_ - fall_lo_));
}

double ReferenceCutoff::operator()(double s) const {
    double x = wrap_2pi(s);
    if (x >= l_K_) return 0.0;
    if (x <= rise_) return mu_hat(x);
    if (x < S_) return 1.0;
    return 1.0 - mu_hat(x - S_);
}

CutoffBundle::CutoffBundle(const CoveringSpec& cov, GridSpec grid) : cov_(cov), grid_(grid), mu1d_(cov) {
    // chi_tilde lives strictly inside {chi = 1} = p_K + [l_K - S, S]^2.
    bump_width_ = mu1d_.plateau_hi() - mu1d_.plateau_lo();
    if (bump_width_ <= 0.0) fail(Errc::ConfigError, "covering plateau is empty; K too small");

    // True bump mass via fine 1-D quadrature of the product factor.
    {
        const int nq = 1 << 14;
        long double acc = 0.0L;
        for (int i = 0; i < nq; ++i) acc += bump01((i + 0.5) / nq);
        double mass1d = static_cast<double>(acc) / nq * bump_width_;
        z_true_ = mass1d * mass1d;
        if (z_true_ <= 0.0) fail(Errc::ConfigError, "degenerate chi_tilde bump");
    }

    auto sample = [&](auto f) { return ScalarField::sample(grid_, [&](double x1, double x2) { return f(Vec2{x1, x2}); }); };

    chi_grid_ = sample([&](Vec2 x) { return chi(x); });

    // Grid copies are rescaled individually: each has grid integral exactly 1
    // although the shift S is not an integer number of cells.
    auto normalized = [&](ScalarField raw) {
        double z = raw.integral();
        if (z <= 0.0) fail(Errc::ConfigError, "degenerate chi_tilde bump on grid");
        return (1.0 / z) * raw;
    };
    chi_tilde_grid_ = normalized(sample([&](Vec2 x) { return raw_bump(x); }));
    chi_tilde_right_grid_ = normalized(sample([&](Vec2 x) { return raw_bump({x.x - cov_.shift(), x.y}); }));
    chi_tilde_diag_grid_ =
        normalized(sample([&](Vec2 x) { return raw_bump({x.x - cov_.shift(), x.y - cov_.shift()}); }));
}

double CutoffBundle::raw_bump(Vec2 x) const {
    double lo1 = cov_.p_K.x + mu1d_.plateau_lo();
    double lo2 = cov_.p_K.y + mu1d_.plateau_lo();
    double b1 = bump01(wrap_2pi(x.x - lo1) / bump_width_);
    if (b1 == 0.0) return 0.0;
    return b1 * bump01(wrap_2pi(x.y - lo2) / bump_width_);
}

double CutoffBundle::smoothness_defect(int n_val) const {
    // 1-D DFT of the reference cutoff on a fine grid; returns the relative
    // coefficient magnitude at k = n_val / 3.
    std::vector<double> samples(n_val);
    double peak = 0.0;
    for (int i = 0; i < n_val; ++i) {
        samples[i] = mu1d_(kTwoPi * i / n_val);
        peak = std::max(peak, std::fabs(samples[i]));
    }
    int k = n_val / 3;
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < n_val; ++i) {
        double phase = -kTwoPi * k * i / n_val;
        acc += samples[i] * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return std::abs(acc) / (n_val * std::max(peak, 1e-300));
}

CutoffBundle build_partition(const CoveringSpec& cov, GridSpec grid) { return CutoffBundle(cov, grid); }

}  // namespace tsteer
