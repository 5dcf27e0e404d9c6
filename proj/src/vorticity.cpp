#include "tsteer/vorticity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "tsteer/errors.hpp"
#include "tsteer/fft.hpp"
#include "tsteer/spectral.hpp"

namespace tsteer {

namespace {

using Cplx = std::complex<double>;

struct Workspace {
    explicit Workspace(GridSpec g)
        : grid(g), fft(Fft::get(g.n)), u1(g.size()), u2(g.size()), w1(g.size()), w2(g.size()),
          prod(g.size()), fgrid(g.size()), h1(g.spectral_size()), h2(g.spectral_size()),
          fhat(g.spectral_size()) {}

    GridSpec grid;
    const Fft& fft;
    std::vector<double> u1, u2, w1, w2, prod, fgrid;
    std::vector<Cplx> h1, h2, fhat;

    void dealias(std::vector<Cplx>& hat) const {
        int n = grid.n, lim = grid.dealias_limit();
        for (int i1 = 0; i1 < n; ++i1) {
            int k1 = wavenumber(i1, n);
            for (int i2 = 0; i2 <= n / 2; ++i2)
                if (std::abs(k1) > lim || i2 > lim) hat[static_cast<std::size_t>(i1) * (n / 2 + 1) + i2] = {0.0, 0.0};
        }
    }

    // -(Ups(w,0) . grad w), dealiased; returns max |u| for the CFL bound.
    double advection(const std::vector<Cplx>& what, std::vector<Cplx>& out) {
        int n = grid.n;
        for (int i1 = 0; i1 < n; ++i1) {
            int k1 = wavenumber(i1, n);
            for (int i2 = 0; i2 <= n / 2; ++i2) {
                std::size_t idx = static_cast<std::size_t>(i1) * (n / 2 + 1) + i2;
                double k2 = static_cast<double>(k1) * k1 + static_cast<double>(i2) * i2;
                Cplx w = what[idx];
                if (k2 == 0.0) {
                    h1[idx] = h2[idx] = {0.0, 0.0};
                    out[idx] = {0.0, 0.0};
                    continue;
                }
                Cplx phi = w / k2;
                h1[idx] = Cplx(0.0, i2) * phi;
                h2[idx] = Cplx(0.0, -k1) * phi;
                out[idx] = Cplx(0.0, k1) * w;  // reuse: d1 w goes through out
            }
        }
        fft.inverse(h1.data(), u1.data());
        fft.inverse(h2.data(), u2.data());
        fft.inverse(out.data(), w1.data());
        for (int i1 = 0; i1 < n; ++i1) {
            int k1 = wavenumber(i1, n);
            (void)k1;
            for (int i2 = 0; i2 <= n / 2; ++i2) {
                std::size_t idx = static_cast<std::size_t>(i1) * (n / 2 + 1) + i2;
                h1[idx] = Cplx(0.0, i2) * what[idx];
            }
        }
        fft.inverse(h1.data(), w2.data());
        double umax = 0.0;
        for (std::size_t i = 0; i < prod.size(); ++i) {
            umax = std::max({umax, std::fabs(u1[i]), std::fabs(u2[i])});
            prod[i] = u1[i] * w1[i] + u2[i] * w2[i];
        }
        fft.forward(prod.data(), out.data());
        dealias(out);
        for (auto& c : out) c = -c;
        out[0] = {0.0, 0.0};
        return umax;
    }
};

double spectral_h0(const std::vector<Cplx>& hat, GridSpec g) {
    int n = g.n;
    long double acc = 0.0L;
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 <= n / 2; ++i2) {
            std::size_t idx = static_cast<std::size_t>(i1) * (n / 2 + 1) + i2;
            long double mult = (i2 == 0 || i2 == n / 2) ? 1.0L : 2.0L;
            acc += mult * std::norm(hat[idx]);
        }
    return std::sqrt(static_cast<double>(acc) * 4.0 * kPi * kPi);
}

}  // namespace

TrajectoryRecord solve_vorticity(const ScalarField& w0, const Forcing* h, const MeanVelocityProgram& aleph,
                                 const Forcing* extra, double nu, double T, const VorticityOptions& opt) {
    if (nu <= 0.0 || T <= 0.0) fail(Errc::ConfigError, "solve_vorticity needs nu > 0 and T > 0");
    GridSpec g = w0.grid();
    Workspace ws(g);
    int n = g.n;
    std::size_t sn = g.spectral_size();

    std::vector<Cplx> what = w0.spectral();
    what[0] = {0.0, 0.0};

    // step boundaries: forcing jumps plus caller-provided alignment times
    std::vector<double> pts = opt.breakpoints;
    if (h) pts.insert(pts.end(), h->breakpoints.begin(), h->breakpoints.end());
    if (extra) pts.insert(pts.end(), extra->breakpoints.begin(), extra->breakpoints.end());
    std::vector<double> edges = merge_breakpoints(0.0, T, pts, 1e-13 * std::max(T, 1.0));

    // total forcing (h + extra) in spectral form, dealiased and mean-free;
    // cached by evaluation time since RK4 reuses the half step
    double cache_t = -1.0;
    std::vector<Cplx> cache_fhat(sn, Cplx(0.0, 0.0));
    auto forcing_hat = [&](double t) -> const std::vector<Cplx>& {
        if (t == cache_t) return cache_fhat;
        std::fill(cache_fhat.begin(), cache_fhat.end(), Cplx(0.0, 0.0));
        for (const Forcing* f : {h, extra}) {
            if (!f || !f->eval_grid) continue;
            f->eval_grid(t, ws.fgrid);
            ws.fft.forward(ws.fgrid.data(), ws.fhat.data());
            for (std::size_t i = 0; i < sn; ++i) cache_fhat[i] += ws.fhat[i];
        }
        ws.dealias(cache_fhat);
        cache_fhat[0] = {0.0, 0.0};
        cache_t = t;
        return cache_fhat;
    };

    std::vector<Cplx> N1(sn), N2(sn), N3(sn), N4(sn), stage(sn);
    auto eval_rhs = [&](const std::vector<Cplx>& state, double t, std::vector<Cplx>& out) -> double {
        double umax = ws.advection(state, out);
        const auto& fh = forcing_hat(t);
        for (std::size_t i = 0; i < sn; ++i) out[i] += fh[i];
        return umax;
    };

    // integrating factor over [t, t+dt]: viscous decay and mean translation
    auto make_phase = [&](double t0, double t1, std::vector<Cplx>& out) {
        Vec2 d = aleph.mean_displacement(t0, t1);
        double dt = t1 - t0;
        for (int i1 = 0; i1 < n; ++i1) {
            int k1 = wavenumber(i1, n);
            for (int i2 = 0; i2 <= n / 2; ++i2) {
                std::size_t idx = static_cast<std::size_t>(i1) * (n / 2 + 1) + i2;
                double k2 = static_cast<double>(k1) * k1 + static_cast<double>(i2) * i2;
                double arg = -(k1 * d.x + i2 * d.y);
                double damp = std::exp(-nu * k2 * dt);
                out[idx] = damp * Cplx(std::cos(arg), std::sin(arg));
            }
        }
    };
    std::vector<Cplx> Eh(sn), Ef(sn), E2(sn);

    TrajectoryRecord rec;
    auto push_snapshot = [&](double t) {
        rec.times.push_back(t);
        rec.snapshots.push_back(ScalarField::from_spectral(g, what));
    };
    auto push_diag = [&](double t) {
        rec.diag_times.push_back(t);
        rec.norm_h0.push_back(spectral_h0(what, g));
        ScalarField f = ScalarField::from_spectral(g, what);
        rec.norm_h1.push_back(sobolev_norm(f, 1));
        rec.field_mean.push_back(f.mean());
    };
    push_snapshot(0.0);
    push_diag(0.0);

    double dx = g.spacing();
    double t = 0.0;
    std::size_t edge_idx = 1;
    long step_count = 0;
    while (t < T - 1e-14 * std::max(T, 1.0)) {
        double umax = eval_rhs(what, t, N1);
        double mean_speed = aleph.value(t).norm() / (4.0 * kPi * kPi);
        (void)mean_speed;  // translation handled exactly by the phase factor
        double dt = opt.fixed_dt ? opt.dt_fixed : std::min(opt.dt_max, opt.cfl * dx / std::max(umax, 1e-12));
        while (edge_idx < edges.size() && edges[edge_idx] <= t + 1e-14) ++edge_idx;
        double limit = (edge_idx < edges.size()) ? edges[edge_idx] : T;
        if (!opt.fixed_dt) {
            if (t + dt >= limit - 1e-13) dt = limit - t;
        } else if (t + dt > limit) {
            dt = limit - t;
        }
        if (dt < opt.dt_min) fail(Errc::CflViolation, "time step underflow at t = " + std::to_string(t));

        make_phase(t, t + 0.5 * dt, Eh);
        make_phase(t + 0.5 * dt, t + dt, E2);
        for (std::size_t i = 0; i < sn; ++i) Ef[i] = Eh[i] * E2[i];

        for (std::size_t i = 0; i < sn; ++i) stage[i] = Eh[i] * (what[i] + 0.5 * dt * N1[i]);
        eval_rhs(stage, t + 0.5 * dt, N2);
        for (std::size_t i = 0; i < sn; ++i) stage[i] = Eh[i] * what[i] + 0.5 * dt * N2[i];
        eval_rhs(stage, t + 0.5 * dt, N3);
        for (std::size_t i = 0; i < sn; ++i) stage[i] = Ef[i] * what[i] + dt * E2[i] * N3[i];
        eval_rhs(stage, t + dt, N4);
        for (std::size_t i = 0; i < sn; ++i)
            what[i] = Ef[i] * what[i] +
                      (dt / 6.0) * (Ef[i] * N1[i] + 2.0 * E2[i] * (N2[i] + N3[i]) + N4[i]);
        what[0] = {0.0, 0.0};

        t += dt;
        ++step_count;
        push_diag(t);
        if (rec.norm_h0.back() > opt.blowup_norm) fail(Errc::BlowupDetected, "vorticity norm exceeded the blowup guard");
        bool at_end = t >= T - 1e-14 * std::max(T, 1.0);
        if (at_end || (opt.snapshot_stride > 0 && step_count % opt.snapshot_stride == 0)) push_snapshot(at_end ? T : t);
    }
    return rec;
}

}  // namespace tsteer
