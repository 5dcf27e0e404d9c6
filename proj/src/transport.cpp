#include "tsteer/transport.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "tsteer/errors.hpp"
#include "tsteer/fft.hpp"
#include "tsteer/spectral.hpp"

namespace tsteer {

namespace {

using Cplx = std::complex<double>;

void apply_translation_phase(std::vector<Cplx>& hat, GridSpec g, Vec2 d) {
    int n = g.n;
    for (int i1 = 0; i1 < n; ++i1) {
        int k1 = wavenumber(i1, n);
        for (int i2 = 0; i2 <= n / 2; ++i2) {
            double arg = -(k1 * d.x + i2 * d.y);
            hat[static_cast<std::size_t>(i1) * (n / 2 + 1) + i2] *= Cplx(std::cos(arg), std::sin(arg));
        }
    }
}

void dealias_hat(std::vector<Cplx>& hat, GridSpec g) {
    int n = g.n, lim = g.dealias_limit();
    for (int i1 = 0; i1 < n; ++i1) {
        int k1 = wavenumber(i1, n);
        for (int i2 = 0; i2 <= n / 2; ++i2)
            if (std::abs(k1) > lim || i2 > lim) hat[static_cast<std::size_t>(i1) * (n / 2 + 1) + i2] = {0.0, 0.0};
    }
}

std::vector<double> panel_edges(double a, double b, const TransportOptions& opt, const std::vector<double>& extra) {
    std::vector<double> pts = opt.breakpoints;
    pts.insert(pts.end(), extra.begin(), extra.end());
    std::vector<double> edges = merge_breakpoints(a, b, pts, 1e-15);
    if (opt.max_panel_splits > 1) {
        std::vector<double> split;
        for (std::size_t p = 0; p + 1 < edges.size(); ++p)
            for (int k = 0; k < opt.max_panel_splits; ++k)
                split.push_back(edges[p] + (edges[p + 1] - edges[p]) * k / opt.max_panel_splits);
        split.push_back(b);
        edges = std::move(split);
    }
    return edges;
}

// Exact translation stepping for the spatially constant drift.
void advance_translation(std::vector<Cplx>& vhat, GridSpec g, const ReturnProfile* profile, const Forcing* forcing,
                         double t0, double t1, const TransportOptions& opt, const Fft& fft,
                         std::vector<double>& scratch_grid, std::vector<Cplx>& scratch_hat) {
    auto disp = [&](double a, double b) {
        return profile ? profile->displacement(b) - profile->displacement(a) : Vec2{0.0, 0.0};
    };
    std::vector<double> edges = panel_edges(t0, t1, opt, {});
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        double a = edges[p], b = edges[p + 1];
        apply_translation_phase(vhat, g, disp(a, b));
        if (forcing && forcing->eval_grid) {
            const GaussRule& gr = gauss_rule(opt.gauss_points);
            double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (std::size_t q = 0; q < gr.nodes.size(); ++q) {
                double s = mid + half * gr.nodes[q];
                forcing->eval_grid(s, scratch_grid);
                fft.forward(scratch_grid.data(), scratch_hat.data());
                dealias_hat(scratch_hat, g);
                apply_translation_phase(scratch_hat, g, disp(s, b));
                double w = gr.weights[q] * half;
                for (std::size_t i = 0; i < vhat.size(); ++i) vhat[i] += w * scratch_hat[i];
            }
        }
    }
}

struct SemiLagrangian {
    GridSpec g;
    const ObservableSpec* obs;
    int pad_factor, interp_order, gauss_points;

    // backward RK4 through [a, b] of the observable drift (argument time is
    // the observable clock directly)
    Vec2 trace_back(Vec2 x, double b, double a, int substeps) const {
        Vec2 cur = x;
        double h = (a - b) / substeps;
        for (int k = 0; k < substeps; ++k) {
            double tk = b + k * h;
            Vec2 k1 = obs->drift(cur, tk);
            Vec2 k2 = obs->drift(cur + k1 * (0.5 * h), tk + 0.5 * h);
            Vec2 k3 = obs->drift(cur + k2 * (0.5 * h), tk + 0.5 * h);
            Vec2 k4 = obs->drift(cur + k3 * h, tk + h);
            cur = cur + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        }
        return cur;
    }
};

}  // namespace

PaddedInterpolant::PaddedInterpolant(const ScalarField& f, int pad_factor, int order) : order_(order) {
    GridSpec g = f.grid();
    int n = g.n;
    nf_ = n * pad_factor;
    const Fft& fft = Fft::get(nf_);
    std::vector<Cplx> fine_hat(static_cast<std::size_t>(nf_) * (nf_ / 2 + 1), Cplx(0.0, 0.0));
    const auto& hat = f.spectral();
    for (int i1 = 0; i1 < n; ++i1) {
        int k1 = wavenumber(i1, n);
        if (std::abs(k1) > n / 2 - 1 && pad_factor > 1 && k1 == n / 2) continue;  // drop the Nyquist row
        int j1 = k1 >= 0 ? k1 : k1 + nf_;
        for (int i2 = 0; i2 <= n / 2; ++i2)
            fine_hat[static_cast<std::size_t>(j1) * (nf_ / 2 + 1) + i2] =
                hat[static_cast<std::size_t>(i1) * (n / 2 + 1) + i2];
    }
    fine_.resize(static_cast<std::size_t>(nf_) * nf_);
    fft.inverse(fine_hat.data(), fine_.data());
}

double PaddedInterpolant::operator()(Vec2 x) const {
    double h = kTwoPi / nf_;
    double fx = wrap_2pi(x.x) / h, fy = wrap_2pi(x.y) / h;
    int i0 = static_cast<int>(std::floor(fx)), j0 = static_cast<int>(std::floor(fy));
    double ux = fx - i0, uy = fy - j0;
    int p = order_;
    int lo = -(p / 2 - 1);
    double wx[12], wy[12];
    auto weights = [&](double u, double* w) {
        for (int i = 0; i < p; ++i) {
            double num = 1.0, den = 1.0;
            double xi = lo + i;
            for (int k = 0; k < p; ++k) {
                if (k == i) continue;
                num *= (u - (lo + k));
                den *= (xi - (lo + k));
            }
            w[i] = num / den;
        }
    };
    weights(ux, wx);
    weights(uy, wy);
    double acc = 0.0;
    for (int a = 0; a < p; ++a) {
        int ia = ((i0 + lo + a) % nf_ + nf_) % nf_;
        double row = 0.0;
        for (int b = 0; b < p; ++b) {
            int jb = ((j0 + lo + b) % nf_ + nf_) % nf_;
            row += wy[b] * fine_[static_cast<std::size_t>(ia) * nf_ + jb];
        }
        acc += wx[a] * row;
    }
    return acc;
}

TrajectoryRecord solve_transport(const ScalarField& v0, const TransportDrift& drift, const Forcing* forcing,
                                 double T, const TransportOptions& opt) {
    GridSpec g = v0.grid();
    const Fft& fft = Fft::get(g.n);
    TrajectoryRecord rec;
    auto push = [&](double t, const ScalarField& f) {
        rec.times.push_back(t);
        rec.snapshots.push_back(f);
        rec.diag_times.push_back(t);
        rec.norm_h0.push_back(sobolev_norm(f, 0));
        rec.norm_h1.push_back(sobolev_norm(f, 1));
        rec.field_mean.push_back(f.mean());
    };
    push(0.0, v0);

    using Kind = TransportDrift::Kind;
    if (drift.kind == Kind::Zero || drift.kind == Kind::ConstantProfile) {
        std::vector<Cplx> vhat = v0.spectral();
        std::vector<double> sg(g.size());
        std::vector<Cplx> sh(g.spectral_size());
        advance_translation(vhat, g, drift.profile, forcing, 0.0, T, opt, fft, sg, sh);
        push(T, ScalarField::from_spectral(g, std::move(vhat)));
        return rec;
    }

    // Composite drift: exact translation while only the profile acts, then
    // semi-Lagrangian on the observable segment [T_b, 1].
    double obs_start = 0.0, obs_end = T;
    const ObservableSpec* obs = drift.obs;
    if (drift.kind == Kind::Composite) {
        obs_start = drift.profile->schedule().T_b;
        obs_end = std::min(T, 1.0);
    }

    std::vector<Cplx> vhat = v0.spectral();
    std::vector<double> sg(g.size());
    std::vector<Cplx> sh(g.spectral_size());
    if (drift.kind == Kind::Composite && obs_start > 0.0) {
        advance_translation(vhat, g, drift.profile, forcing, 0.0, std::min(obs_start, T), opt, fft, sg, sh);
        if (T <= obs_start) {
            push(T, ScalarField::from_spectral(g, std::move(vhat)));
            return rec;
        }
    }

    // observable clock offset: composite drift evaluates at (t - obs_start)
    double clock0 = drift.kind == Kind::Composite ? obs_start : 0.0;
    SemiLagrangian sl{g, obs, opt.pad_factor, opt.interp_order, opt.gauss_points};

    std::vector<double> extra;
    if (opt.align_drift_kinks)
        for (double k : obs->kinks()) extra.push_back(clock0 + k);
    std::vector<double> edges = panel_edges(obs_start, obs_end, opt, extra);
    if (opt.dt > 0.0) {
        std::vector<double> uniform;
        for (double t = obs_start; t < obs_end; t += opt.dt) uniform.push_back(t);
        edges = merge_breakpoints(obs_start, obs_end, uniform, 1e-15);
        if (opt.align_drift_kinks) {
            std::vector<double> merged = edges;
            merged.insert(merged.end(), extra.begin(), extra.end());
            edges = merge_breakpoints(obs_start, obs_end, merged, 1e-15);
        }
    }

    ScalarField cur = ScalarField::from_spectral(g, vhat);
    const GaussRule& gr = gauss_rule(opt.gauss_points);
    std::vector<double> next_vals(g.size());
    long step_count = 0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        double a = edges[p], b = edges[p + 1];
        PaddedInterpolant interp(cur, opt.pad_factor, opt.interp_order);
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                Vec2 x{g.node(i), g.node(j)};
                Vec2 back = sl.trace_back(x, b - clock0, a - clock0, 1);
                double val = interp(back);
                if (forcing && forcing->eval_point) {
                    double acc = 0.0;
                    for (std::size_t q = 0; q < gr.nodes.size(); ++q) {
                        double s = mid + half * gr.nodes[q];
                        Vec2 xs = sl.trace_back(x, b - clock0, s - clock0, 1);
                        acc += gr.weights[q] * forcing->eval_point(xs, s);
                    }
                    val += acc * half;
                }
                next_vals[static_cast<std::size_t>(i) * g.n + j] = val;
            }
        // band-limit each step: unresolved interpolation residue otherwise
        // compounds with gain above one
        cur = ScalarField::from_values(g, next_vals).dealiased();
        ++step_count;
        if (opt.snapshot_stride > 0 && step_count % opt.snapshot_stride == 0 && p + 2 < edges.size()) push(b, cur);
    }
    if (drift.kind == Kind::Composite && T > obs_end) {
        std::vector<Cplx> tail = cur.spectral();
        advance_translation(tail, g, drift.profile, forcing, obs_end, T, opt, fft, sg, sh);
        cur = ScalarField::from_spectral(g, std::move(tail));
    }
    push(T, cur);
    return rec;
}

double transport_characteristics_value(Vec2 x, double T, const std::function<double(Vec2)>& v0,
                                       const ReturnProfile& drift,
                                       const std::function<double(Vec2, double)>& forcing,
                                       std::span<const double> breakpoints, int gauss_points, int panel_splits) {
    double acc = v0 ? v0(drift.flow(x, T, 0.0)) : 0.0;
    if (!forcing) return acc;
    std::vector<double> edges = merge_breakpoints(0.0, T, breakpoints, 1e-15);
    const GaussRule& gr = gauss_rule(gauss_points);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        for (int split = 0; split < panel_splits; ++split) {
            double a = edges[p] + (edges[p + 1] - edges[p]) * split / panel_splits;
            double b = edges[p] + (edges[p + 1] - edges[p]) * (split + 1) / panel_splits;
            double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (std::size_t q = 0; q < gr.nodes.size(); ++q) {
                double s = mid + half * gr.nodes[q];
                acc += gr.weights[q] * half * forcing(drift.flow(x, T, s), s);
            }
        }
    }
    return acc;
}

}  // namespace tsteer
