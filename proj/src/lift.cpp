#include "tsteer/lift.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "tsteer/errors.hpp"
#include "tsteer/fft.hpp"
#include "tsteer/spectral.hpp"

namespace tsteer {

namespace {

using Cplx = std::complex<double>;

// Periodic x1-antiderivative of the nonzero-k1 part plus the row means:
// eta = d/dx1 [P] + F(x2), with P of zero row mean.
struct RowSplit {
    ScalarField P;
    std::vector<double> F;  // per x2 node
};

RowSplit x1_antiderivative(const ScalarField& eta) {
    GridSpec g = eta.grid();
    int n = g.n;
    auto hat = eta.spectral();
    std::vector<Cplx> row0(static_cast<std::size_t>(n) / 2 + 1, Cplx(0.0, 0.0));
    for (int i2 = 0; i2 <= n / 2; ++i2) row0[i2] = hat[i2];  // k1 = 0 row
    for (int i1 = 0; i1 < n; ++i1) {
        int k1 = wavenumber(i1, n);
        for (int i2 = 0; i2 <= n / 2; ++i2) {
            auto& c = hat[static_cast<std::size_t>(i1) * (n / 2 + 1) + i2];
            c = (k1 == 0) ? Cplx(0.0, 0.0) : c / Cplx(0.0, k1);
        }
    }
    RowSplit out{ScalarField::from_spectral(g, std::move(hat)), {}};
    // F(x2) from the k1 = 0 row (1-D inverse transform)
    out.F.assign(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double x2 = g.node(j);
        double acc = row0[0].real();
        for (int k2 = 1; k2 <= n / 2; ++k2) {
            double mult = (k2 == n / 2) ? 1.0 : 2.0;
            acc += mult * (row0[k2].real() * std::cos(k2 * x2) - row0[k2].imag() * std::sin(k2 * x2));
        }
        out.F[j] = acc;
    }
    return out;
}

// P(x1*, x2) along all grid rows x2, spectral in both axes.
std::vector<double> line_values(const ScalarField& P, double x1) {
    GridSpec g = P.grid();
    int n = g.n;
    ScalarField t = P.translated(-x1, 0.0);  // t(0, x2) = P(x1, x2)
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = t.at(0, j);
    return out;
}

// 1-D periodic antiderivative values of a mean-free sampled function.
std::vector<double> antiderivative_1d(const std::vector<double>& f, double from) {
    int n = static_cast<int>(f.size());
    // real DFT by direct sums (n is small and this runs once per snapshot)
    std::vector<Cplx> hat(n / 2 + 1, Cplx(0.0, 0.0));
    for (int k = 0; k <= n / 2; ++k) {
        Cplx acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            double ang = -k * kTwoPi * j / n;
            acc += f[j] * Cplx(std::cos(ang), std::sin(ang));
        }
        hat[k] = acc * (1.0 / n);
    }
    auto eval = [&](double x) {
        double acc = 0.0;
        for (int k = 1; k <= n / 2; ++k) {
            Cplx c = hat[k] / Cplx(0.0, static_cast<double>(k));
            double mult = (k == n / 2) ? 1.0 : 2.0;
            acc += mult * (c.real() * std::cos(k * x) - c.imag() * std::sin(k * x));
        }
        return acc;
    };
    double base = eval(from);
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = eval(kTwoPi * j / n) - base;
    return out;
}

struct LiftParts {
    std::vector<double> a;       // grid field, integral from p1 along x1
    std::vector<double> a_edge;  // a(p1 + L, x2)
    std::vector<double> b;       // integral of a_edge from p2
};

LiftParts lift_parts(const ScalarField& eta, const LiftSpec& spec) {
    GridSpec g = eta.grid();
    int n = g.n;
    double max_eta = eta.max_abs();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec2 x{g.node(i), g.node(j)};
            bool inside = x.x >= spec.p.x && x.x <= spec.p.x + spec.L && x.y >= spec.p.y && x.y <= spec.p.y + spec.L;
            if (!inside && std::fabs(eta.at(i, j)) > 1e-12 * std::max(max_eta, 1e-300))
                fail(Errc::SupportViolation, "vorticity control detected outside its support square");
        }

    RowSplit split = x1_antiderivative(eta);
    std::vector<double> P_p1 = line_values(split.P, spec.p.x);
    std::vector<double> P_edge = line_values(split.P, spec.p.x + spec.L);

    LiftParts parts;
    parts.a.resize(g.size());
    for (int i = 0; i < n; ++i) {
        double run = wrap_2pi(g.node(i) - spec.p.x);
        for (int j = 0; j < n; ++j)
            parts.a[static_cast<std::size_t>(i) * n + j] = split.P.at(i, j) - P_p1[j] + split.F[j] * run;
    }
    parts.a_edge.resize(n);
    for (int j = 0; j < n; ++j) parts.a_edge[j] = P_edge[j] - P_p1[j] + split.F[j] * spec.L;
    parts.b = antiderivative_1d(parts.a_edge, spec.p.y);
    return parts;
}

}  // namespace

double LiftSpec::rho(double x1) const {
    double s = wrap_2pi(x1 - p.x);
    if (s <= 0.0 || s >= L + d) return 0.0;
    if (s < L) return smoothstep01(s / L);
    if (s <= L + 0.5 * d) return 1.0;
    return smoothstep01((L + d - s) / (0.5 * d));  // descent over (L + d/2, L + d)
}

double LiftSpec::rho_prime(double x1) const {
    double s = wrap_2pi(x1 - p.x);
    if (s <= 0.0 || s >= L + d) return 0.0;
    if (s < L) return smoothstep01_deriv(s / L) / L;
    if (s <= L + 0.5 * d) return 0.0;
    return -smoothstep01_deriv((L + d - s) / (0.5 * d)) / (0.5 * d);
}

double LiftSpec::chi_bar(Vec2 x) const {
    auto axis = [&](double v, double lo) {
        double s = wrap_2pi(v - lo);
        // 1 on [d/4, d/4 + L + d/2], supported in (0, L + d)
        double rise_w = 0.25 * d;
        double hi = 0.25 * d + L + 0.5 * d;
        if (s <= 0.0 || s >= L + d) return 0.0;
        if (s < rise_w) return smoothstep01(s / rise_w);
        if (s <= hi) return 1.0;
        return smoothstep01((L + d - s) / (L + d - hi));
    };
    return axis(x.x, p.x - 0.25 * d) * axis(x.y, p.y - 0.25 * d);
}

LiftSpec LiftSpec::from_covering(const CoveringSpec& cov) {
    LiftSpec spec;
    double side = std::max(cov.L2 - cov.L1, cov.H2 - cov.H1);
    spec.p = {0.5 * (cov.L1 + cov.L2 - side), 0.5 * (cov.H1 + cov.H2 - side)};
    spec.L = side;
    spec.d = 0.5 * cov.d;
    if (spec.d <= 0.0) fail(Errc::ConfigError, "velocity lift needs a positive covering margin");
    if (spec.p.x + spec.L + spec.d >= kTwoPi || spec.p.x <= 0.0 || spec.p.y <= 0.0)
        fail(Errc::ConfigError, "support square plus margin must avoid the seam");
    return spec;
}

VectorField2 lift_snapshot(const ScalarField& eta, const LiftSpec& spec) {
    GridSpec g = eta.grid();
    int n = g.n;
    LiftParts parts = lift_parts(eta, spec);
    double cut1 = spec.p.x + spec.L + 0.25 * spec.d;

    std::vector<double> xi1(g.size(), 0.0), xi2(g.size(), 0.0);
    for (int i = 0; i < n; ++i) {
        double x1 = g.node(i);
        bool in_xi1 = x1 < cut1;
        bool in_xi2 = x1 >= spec.p.x && x1 <= cut1;
        if (!in_xi1 && !in_xi2) continue;
        double rp = spec.rho_prime(x1);
        double r = spec.rho(x1);
        for (int j = 0; j < n; ++j) {
            std::size_t idx = static_cast<std::size_t>(i) * n + j;
            double cb = spec.chi_bar({x1, g.node(j)});
            if (in_xi1 && rp != 0.0) xi1[idx] = -cb * rp * parts.b[j];
            if (in_xi2) {
                double c = parts.a[idx] - r * parts.a_edge[j];
                xi2[idx] = cb * c;
            }
        }
    }
    return {ScalarField::from_values(g, std::move(xi1)), ScalarField::from_values(g, std::move(xi2))};
}

Vec2 lift_mean(const ScalarField& eta, const LiftSpec& spec) {
    GridSpec g = eta.grid();
    int n = g.n;
    LiftParts parts = lift_parts(eta, spec);
    double h = g.spacing();
    double cut1 = spec.p.x + spec.L + 0.25 * spec.d;

    long double m1 = 0.0L, m2 = 0.0L;
    for (int i = 0; i < n; ++i) {
        double x1 = g.node(i);
        double rp = spec.rho_prime(x1);
        bool in_xi2 = x1 >= spec.p.x && x1 <= cut1;
        if (rp == 0.0 && !in_xi2) continue;
        double r = spec.rho(x1);
        for (int j = 0; j < n; ++j) {
            std::size_t idx = static_cast<std::size_t>(i) * n + j;
            double cb = spec.chi_bar({x1, g.node(j)});
            if (x1 < cut1 && rp != 0.0) m1 += -cb * rp * parts.b[j];
            if (in_xi2) m2 += cb * (parts.a[idx] - r * parts.a_edge[j]);
        }
    }
    return {static_cast<double>(m1) * h * h, static_cast<double>(m2) * h * h};
}

namespace {

double beta_bump(double s, double halfwidth) { return bump01(0.5 + 0.5 * s / halfwidth); }

double beta_mass(double halfwidth) {
    const int nq = 1 << 12;
    long double acc = 0.0L;
    for (int i = 0; i < nq; ++i) acc += bump01((i + 0.5) / nq);
    return static_cast<double>(acc) / nq * 2.0 * halfwidth;
}

}  // namespace

CutCurveSpec CutCurveSpec::straight_vertical(double c, double halfwidth) {
    CutCurveSpec spec;
    spec.bump_halfwidth = halfwidth;
    spec.name = "straight-vertical";
    spec.generator = [c](double) {
        CutSection s;
        s.over_x2 = true;
        s.a = 0.0;
        s.b = kTwoPi;
        s.upsilon = [c](double) { return -c; };
        s.upsilon_prime = [](double) { return 0.0; };
        s.sign = +1;
        return std::vector<CutSection>{s};
    };
    return spec;
}

CutCurveSpec CutCurveSpec::straight_horizontal(double c, double halfwidth) {
    CutCurveSpec spec;
    spec.bump_halfwidth = halfwidth;
    spec.name = "straight-horizontal";
    spec.generator = [c](double) {
        CutSection s;
        s.over_x2 = false;
        s.a = 0.0;
        s.b = kTwoPi;
        s.upsilon = [c](double) { return -c; };
        s.upsilon_prime = [](double) { return 0.0; };
        s.sign = +1;
        return std::vector<CutSection>{s};
    };
    return spec;
}

CutCurveSpec CutCurveSpec::staircase_vertical(double c, double halfwidth) {
    // A once-winding curve through four alternating sections: vertical run at
    // x1 = c, a slope-one diagonal over to x1 = c + w, a vertical run there,
    // and a slope-minus-one diagonal back. Smooth bends, straight diagonals
    // at the section boundaries. The perturbation widens the diagonals, which
    // shifts the balance between the signed section contributions.
    CutCurveSpec spec;
    spec.bump_halfwidth = halfwidth;
    spec.name = "staircase-vertical";
    spec.generator = [c](double pert) {
        double bw = 0.3;                  // bend width
        double w = 1.3 + 0.3 * pert;      // horizontal extent; the free dial
        double y0 = 1.2;                  // first bend start
        double y1 = y0 + w + bw;          // top of the first diagonal
        double y2 = y1 + 0.7;             // second diagonal start
        double y3 = y2 + w + bw;          // back at x1 = c
        double Ld = w - bw;               // straight part of each diagonal
        double ov = 0.3;                  // section overlap along the straights

        // global graph x1 = H(x2) and its derivative
        auto H = [=](double x2) {
            double u = y0 + wrap_2pi(x2 - y0);
            if (u <= y0 + bw) return c + bw * smoothstep01_integral((u - y0) / bw);
            if (u <= y0 + w) return c + 0.5 * bw + (u - y0 - bw);
            if (u <= y1) return c + w - bw * smoothstep01_integral((y1 - u) / bw);
            if (u <= y2) return c + w;
            if (u <= y2 + bw) return c + w - bw * smoothstep01_integral((u - y2) / bw);
            if (u <= y2 + w) return c + w - 0.5 * bw - (u - y2 - bw);
            if (u <= y3) return c + bw * smoothstep01_integral((y3 - u) / bw);
            return c;
        };
        auto Hp = [=](double x2) {
            double u = y0 + wrap_2pi(x2 - y0);
            if (u <= y0 + bw) return smoothstep01((u - y0) / bw);
            if (u <= y0 + w) return 1.0;
            if (u <= y1) return smoothstep01((y1 - u) / bw);
            if (u <= y2) return 0.0;
            if (u <= y2 + bw) return -smoothstep01((u - y2) / bw);
            if (u <= y2 + w) return -1.0;
            if (u <= y3) return -smoothstep01((y3 - u) / bw);
            return 0.0;
        };

        // section boundaries at the quarter points of the straight diagonals
        double b1 = y0 + bw + 0.25 * Ld, b2 = y0 + bw + 0.75 * Ld;
        double b3 = y2 + bw + 0.25 * Ld, b4 = y2 + bw + 0.75 * Ld;

        std::vector<CutSection> out;
        CutSection s1;  // lower vertical run, wrapping through the seam
        s1.over_x2 = true;
        s1.a = b4 - ov;
        s1.b = b1 + ov + (b1 + ov < b4 - ov ? 0.0 : 0.0);
        s1.upsilon = [=](double x2) { return -H(x2); };
        s1.upsilon_prime = [=](double x2) { return -Hp(x2); };
        s1.sign = +1;
        out.push_back(s1);

        CutSection s2;  // rising diagonal, graph over x1; slope-one junctions flip
        s2.over_x2 = false;
        s2.a = c + 0.5 * bw + 0.25 * Ld - ov;
        s2.b = c + 0.5 * bw + 0.75 * Ld + ov;
        s2.upsilon = [=](double x1) { return -(x1 + (y0 + 0.5 * bw - c)); };
        s2.upsilon_prime = [](double) { return -1.0; };
        s2.sign = -1;
        out.push_back(s2);

        CutSection s3;  // upper vertical run
        s3.over_x2 = true;
        s3.a = b2 - ov;
        s3.b = b3 + ov;
        s3.upsilon = [=](double x2) { return -H(x2); };
        s3.upsilon_prime = [=](double x2) { return -Hp(x2); };
        s3.sign = +1;  // second slope-one junction flips back
        out.push_back(s3);

        CutSection s4;  // descending diagonal; slope-minus-one junctions keep
        s4.over_x2 = false;
        s4.a = c + 0.5 * bw + 0.25 * Ld - ov;
        s4.b = c + 0.5 * bw + 0.75 * Ld + ov;
        s4.upsilon = [=](double x1) { return -(-x1 + (y2 + bw + c + w - 0.5 * bw)); };
        s4.upsilon_prime = [](double) { return 1.0; };
        s4.sign = +1;
        out.push_back(s4);
        return out;
    };
    return spec;
}

namespace {

// parameter membership with wrap-aware intervals
bool param_in(double v, double a, double b) {
    if (b - a >= kTwoPi) return true;
    double r = wrap_2pi(v - a);
    return r <= wrap_2pi(b - a) || r >= kTwoPi - 1e-12;
}

}  // namespace

Vec2 cut_field_point(const CutCurveSpec& cut, const std::vector<CutSection>& sections, Vec2 x) {
    for (const CutSection& s : sections) {
        double param = s.over_x2 ? x.y : x.x;
        if (!param_in(param, s.a, s.b)) continue;
        double graph_coord = s.over_x2 ? x.x : x.y;
        double u = s.upsilon(param);
        double arg = wrap_pm_pi(graph_coord + u);
        if (std::fabs(arg) >= cut.bump_halfwidth) continue;
        double bval = s.sign * beta_bump(arg, cut.bump_halfwidth);
        double up = s.upsilon_prime(param);
        if (s.over_x2) return {bval, bval * up};
        return {bval * up, bval};
    }
    return {0.0, 0.0};
}

VectorField2 sample_cut_field(const CutCurveSpec& cut, const std::vector<CutSection>& sections, GridSpec g) {
    return VectorField2::sample(g, [&](double x1, double x2) { return cut_field_point(cut, sections, {x1, x2}); });
}

Vec2 cut_field_average(const CutCurveSpec& cut, const std::vector<CutSection>& sections) {
    double mass = beta_mass(cut.bump_halfwidth);
    Vec2 acc{0.0, 0.0};
    for (const CutSection& s : sections) {
        double len = wrap_2pi(s.b - s.a);
        if (s.b - s.a >= kTwoPi) len = kTwoPi;
        double du = s.upsilon(s.b) - s.upsilon(s.a);
        if (s.over_x2)
            acc = acc + Vec2{s.sign * mass * len, s.sign * mass * du};
        else
            acc = acc + Vec2{s.sign * mass * du, s.sign * mass * len};
    }
    return acc;
}

bool cut_tube_contains(const CutCurveSpec& cut, const std::vector<CutSection>& sections, Vec2 x, double slack) {
    for (const CutSection& s : sections) {
        double param = s.over_x2 ? x.y : x.x;
        if (!param_in(param, s.a, s.b)) continue;
        double graph_coord = s.over_x2 ? x.x : x.y;
        double arg = wrap_pm_pi(graph_coord + s.upsilon(param));
        if (std::fabs(arg) < cut.bump_halfwidth + slack) return true;
    }
    return false;
}

CutFields build_cut_fields(const CutCurveSpec& c1, const CutCurveSpec& c2, GridSpec g, double det_floor) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        double pert = attempt / 8.0;
        auto s1 = c1.generator(pert);
        auto s2 = c2.generator(pert);
        Vec2 la = cut_field_average(c1, s1);
        Vec2 sa = cut_field_average(c2, s2);
        double det = la.x * sa.y - la.y * sa.x;
        if (std::fabs(det) >= det_floor * la.norm() * sa.norm()) {
            CutFields out{sample_cut_field(c1, s1, g), sample_cut_field(c2, s2, g), la, sa,
                          std::move(s1), std::move(s2), attempt + 1};
            return out;
        }
    }
    fail(Errc::DependentAverages, "cut-field averages stay degenerate after eight perturbations");
}

AverageProgram::AverageProgram(Vec2 u0_mean, Vec2 u1_mean, double sigma, const ReturnProfile& profile,
                               double T_ctrl)
    : u0_(u0_mean), u1_(u1_mean), sigma_(sigma), T_ctrl_(T_ctrl), profile_(&profile) {
    if (sigma * T_ctrl < 1.0) fail(Errc::SigmaTooSmall, "sigma * T_ctrl must be at least 1");
    T_sigma_ = T_ctrl - 1.0 / sigma;
}

Vec2 AverageProgram::blend(double tau) const {
    double s = smoothstep01((tau - 0.25) / 0.5);
    return u0_ + (u1_ - u0_) * s;
}

Vec2 AverageProgram::aleph(double t) const {
    if (t <= T_sigma_) return u0_;
    double tau = std::min(sigma_ * (t - T_sigma_), 1.0);
    return profile_->value(tau) * (4.0 * kPi * kPi * sigma_) + blend(tau);
}

MeanVelocityProgram AverageProgram::as_mean_program() const {
    AverageProgram copy = *this;
    auto value = [copy](double t) { return copy.aleph(t); };
    auto displacement = [copy](double t1, double t2) {
        auto seg = [&](double a, double b) -> Vec2 {
            if (b <= a) return {0.0, 0.0};
            Vec2 acc{0.0, 0.0};
            double pre_hi = std::min(b, copy.T_sigma_);
            if (pre_hi > a) acc = acc + copy.u0_ * ((pre_hi - a) / (4.0 * kPi * kPi));
            double lo = std::max(a, copy.T_sigma_);
            if (b > lo) {
                double ta = copy.sigma_ * (lo - copy.T_sigma_);
                double tb = copy.sigma_ * (b - copy.T_sigma_);
                // scaled profile integrates to the closed-form displacement
                Vec2 d = copy.profile_->displacement(tb) - copy.profile_->displacement(ta);
                acc = acc + d;
                // smooth blend part by fixed-order panels
                Vec2 uacc{0.0, 0.0};
                int panels = 8;
                for (int p = 0; p < panels; ++p) {
                    double pa = ta + (tb - ta) * p / panels, pb = ta + (tb - ta) * (p + 1) / panels;
                    uacc.x += gauss_panel([&](double u) { return copy.blend(u).x; }, pa, pb, 8);
                    uacc.y += gauss_panel([&](double u) { return copy.blend(u).y; }, pa, pb, 8);
                }
                acc = acc + uacc * (1.0 / (copy.sigma_ * 4.0 * kPi * kPi));
            }
            return acc;
        };
        if (t2 >= t1) return seg(t1, t2);
        Vec2 r = seg(t2, t1);
        return Vec2{-r.x, -r.y};
    };
    return {value, displacement};
}

MeanForceSeries mean_force_controls(const std::vector<double>& times, const std::vector<Vec2>& xi_plus_f_mean,
                                    Vec2 lambda_avg, Vec2 sigma_avg, const AverageProgram& program) {
    double det = lambda_avg.x * sigma_avg.y - lambda_avg.y * sigma_avg.x;
    if (std::fabs(det) <= 1e-8 * std::max(lambda_avg.norm() * sigma_avg.norm(), 1e-300))
        fail(Errc::DependentAverages, "mean-force basis is numerically singular");
    auto solve2 = [&](Vec2 rhs) {
        return Vec2{(rhs.x * sigma_avg.y - rhs.y * sigma_avg.x) / det,
                    (lambda_avg.x * rhs.y - lambda_avg.y * rhs.x) / det};
    };

    MeanForceSeries out;
    out.times = times;
    out.lambda_avg = lambda_avg;
    out.sigma_avg = sigma_avg;
    int n = static_cast<int>(times.size());
    out.a_coeff.resize(n);
    out.b_coeff.resize(n);
    out.g4.resize(n);
    out.g5.resize(n);
    for (int k = 0; k < n; ++k) {
        out.a_coeff[k] = solve2(program.aleph(times[k]));
        out.b_coeff[k] = solve2(xi_plus_f_mean[k]);
    }
    for (int k = 0; k < n; ++k) {
        double dA1, dA2;
        if (k == 0) {
            double h = times[1] - times[0];
            dA1 = (out.a_coeff[1].x - out.a_coeff[0].x) / h;
            dA2 = (out.a_coeff[1].y - out.a_coeff[0].y) / h;
        } else if (k == n - 1) {
            double h = times[k] - times[k - 1];
            dA1 = (out.a_coeff[k].x - out.a_coeff[k - 1].x) / h;
            dA2 = (out.a_coeff[k].y - out.a_coeff[k - 1].y) / h;
        } else {
            double h = times[k + 1] - times[k - 1];
            dA1 = (out.a_coeff[k + 1].x - out.a_coeff[k - 1].x) / h;
            dA2 = (out.a_coeff[k + 1].y - out.a_coeff[k - 1].y) / h;
        }
        out.g4[k] = dA1 - out.b_coeff[k].x;
        out.g5[k] = dA2 - out.b_coeff[k].y;
    }
    return out;
}

Vec2 MeanForceSeries::mean_balance(int node) const {
    // trapezoid of gamma4 * avgL + gamma5 * avgS + (B-expansion recombined)
    Vec2 acc{0.0, 0.0};
    for (int k = 1; k <= node; ++k) {
        double h = times[k] - times[k - 1];
        auto total = [&](int i) {
            double c1 = g4[i] + b_coeff[i].x;
            double c2 = g5[i] + b_coeff[i].y;
            return lambda_avg * c1 + sigma_avg * c2;
        };
        acc = acc + (total(k) + total(k - 1)) * (0.5 * h);
    }
    return acc;
}

}  // namespace tsteer
