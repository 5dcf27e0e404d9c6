#include "tsteer/control.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "tsteer/errors.hpp"
#include "tsteer/fft.hpp"
#include "tsteer/spectral.hpp"
#include "tsteer/transport.hpp"

namespace tsteer {

namespace {

// f(x - d) for a raw grid field, via the spectral phase shift
void translate_grid(GridSpec g, std::vector<double>& vals, Vec2 d) {
    const Fft& fft = Fft::get(g.n);
    std::vector<std::complex<double>> hat(g.spectral_size());
    fft.forward(vals.data(), hat.data());
    int n = g.n;
    for (int i1 = 0; i1 < n; ++i1) {
        int k1 = wavenumber(i1, n);
        for (int i2 = 0; i2 <= n / 2; ++i2) {
            double arg = -(k1 * d.x + i2 * d.y);
            hat[static_cast<std::size_t>(i1) * (n / 2 + 1) + i2] *=
                std::complex<double>(std::cos(arg), std::sin(arg));
        }
    }
    fft.inverse(hat.data(), vals.data());
}

}  // namespace

ControlSetup::ControlSetup(const CoveringSpec& cov, GridSpec grid, GeneratorSet generator, int M_jump,
                           FlowTableOptions table_options, double drift_amp_scale)
    : cov_(cov), grid_(grid), gen_(std::move(generator)), cutoffs_(cov, grid), profile_(cov),
      obs_(gen_.modes, FlowSchedule::make(cov.K).T_star, M_jump, drift_amp_scale),
      table_(grid, profile_, obs_, table_options) {
    if (gen_.channel_count() < 4) fail(Errc::ConfigError, "the control generator needs at least two modes");

    // chi translates, sampled analytically
    chi_shift_.resize(cov_.K);
    for (int l = 1; l <= cov_.K; ++l) {
        Vec2 d = cov_.delta(l);
        auto& f = chi_shift_[l - 1];
        f.resize(grid_.size());
        for (int i = 0; i < grid_.n; ++i)
            for (int j = 0; j < grid_.n; ++j)
                f[static_cast<std::size_t>(i) * grid_.n + j] =
                    cutoffs_.chi({grid_.node(i) + d.x, grid_.node(j) + d.y});
    }

    // moment table at the flow table's stored nodes
    int C = channels();
    int nodes = static_cast<int>(table_.node_taus().size());
    moments_.assign(C, std::vector<std::vector<double>>(cov_.K, std::vector<double>(nodes, 0.0)));
    std::vector<double> trig(grid_.size());
    double cell = grid_.spacing() * grid_.spacing();
    for (int node = 0; node < nodes; ++node) {
        const auto& gx = table_.node_gx(node);
        const auto& gy = table_.node_gy(node);
        for (int c = 0; c < C; ++c) {
            Mode m = channel_mode(c);
            bool is_sin = channel_is_sin(c);
            for (int i = 0; i < grid_.n; ++i)
                for (int j = 0; j < grid_.n; ++j) {
                    std::size_t idx = static_cast<std::size_t>(i) * grid_.n + j;
                    double a = m.a * (grid_.node(i) + gx[idx]) + m.b * (grid_.node(j) + gy[idx]);
                    trig[idx] = is_sin ? std::sin(a) : std::cos(a);
                }
            for (int l = 0; l < cov_.K; ++l) {
                const auto& chi = chi_shift_[l];
                long double acc = 0.0L;
                for (std::size_t idx = 0; idx < trig.size(); ++idx) acc += chi[idx] * trig[idx];
                moments_[c][l][node] = static_cast<double>(acc) * cell;
            }
        }
    }
}

double ControlSetup::moment(int channel, int window, double tau) const {
    FlowTable::TauStencil st = table_.stencil(tau);
    const auto& series = moments_[channel][window - 1];
    double acc = 0.0;
    for (int i = 0; i < st.count; ++i) acc += st.w[i] * series[st.first_node + i];
    return acc;
}

int ControlSolution::bin_of(double tau) const {
    int b = static_cast<int>((tau - T_b) / bin_width());
    return std::clamp(b, 0, M_t - 1);
}

ControlSolution ControlSolution::zeros(const ControlSetup& setup, int M_t) {
    ControlSolution z;
    z.modes = setup.generator().modes;
    z.M_t = M_t;
    z.T_b = setup.schedule().T_b;
    z.T_star = setup.schedule().T_star;
    z.zeta.assign(setup.channels(), std::vector<double>(M_t, 0.0));
    return z;
}

void write_control_csv(const std::string& path, const ControlSolution& z) {
    std::ofstream out(path);
    if (!out) fail(Errc::IoError, "cannot open " + path);
    out << "channel,parity,bin,value\n";
    int half = static_cast<int>(z.modes.size());
    for (int c = 0; c < z.channels(); ++c)
        for (int b = 0; b < z.M_t; ++b)
            out << z.modes[c % half].str() << "," << (c < half ? "s" : "c") << "," << b << "," << z.zeta[c][b]
                << "\n";
}

ControlToStateMap::ControlToStateMap(const ControlSetup& setup, int M_t, int gauss_per_piece)
    : setup_(&setup), M_t_(M_t) {
    int C = setup.channels();
    if (static_cast<long>(C) * M_t > 4096) fail(Errc::BudgetExceeded, "control basis exceeds the dense solve cap");
    const GridSpec& g = setup.grid();
    const FlowSchedule& sched = setup.schedule();
    double Tb = sched.T_b, w = sched.T_star / M_t;

    cols_.assign(static_cast<std::size_t>(C) * M_t, std::vector<double>(g.size(), 0.0));
    const GaussRule& gr = gauss_rule(2);
    std::vector<double> g1, g2, trig(g.size());

    const auto& table_edges = setup.table().piece_edges();
    for (int b = 0; b < M_t_; ++b) {
        double lo = Tb + b * w, hi = Tb + (b + 1) * w;
        std::vector<double> inner(table_edges.begin(), table_edges.end());
        std::vector<double> edges = merge_breakpoints(lo, hi, inner, 1e-15);
        for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
            for (int split = 0; split < gauss_per_piece; ++split) {
                double a = edges[p] + (edges[p + 1] - edges[p]) * split / gauss_per_piece;
                double bb = edges[p] + (edges[p + 1] - edges[p]) * (split + 1) / gauss_per_piece;
                double mid = 0.5 * (a + bb), half = 0.5 * (bb - a);
                for (std::size_t q = 0; q < gr.nodes.size(); ++q) {
                    double tau = mid + half * gr.nodes[q];
                    double weight = gr.weights[q] * half;
                    setup.table().displacement_grid(tau, g1, g2);
                    for (int c = 0; c < C; ++c) {
                        Mode m = setup.channel_mode(c);
                        bool is_sin = setup.channel_is_sin(c);
                        auto& col = cols_[static_cast<std::size_t>(column_index(c, b))];
                        for (int i = 0; i < g.n; ++i)
                            for (int j = 0; j < g.n; ++j) {
                                std::size_t idx = static_cast<std::size_t>(i) * g.n + j;
                                double ang = m.a * (g.node(i) + g1[idx]) + m.b * (g.node(j) + g2[idx]);
                                col[idx] += weight * (is_sin ? std::sin(ang) : std::cos(ang));
                            }
                    }
                }
            }
        }
    }
}

ScalarField ControlToStateMap::apply(const ControlSolution& z) const {
    const GridSpec& g = setup_->grid();
    std::vector<double> acc(g.size(), 0.0);
    for (int c = 0; c < z.channels(); ++c)
        for (int b = 0; b < M_t_; ++b) {
            double coef = z.zeta[c][b];
            if (coef == 0.0) continue;
            const auto& col = cols_[static_cast<std::size_t>(column_index(c, b))];
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += coef * col[i];
        }
    return ScalarField::from_values(g, std::move(acc));
}

ScalarField ControlToStateMap::reference_column(int channel, int bin, int panel_splits) const {
    const ControlSetup& s = *setup_;
    const FlowSchedule& sched = s.schedule();
    double w = sched.T_star / M_t_;
    double lo = bin * w, hi = (bin + 1) * w;  // observable clock
    Mode m = s.channel_mode(channel);
    bool is_sin = s.channel_is_sin(channel);
    Forcing f;
    f.eval_point = [=](Vec2 x, double t) {
        if (t < lo || t > hi) return 0.0;
        return is_sin ? sin_mode(m, x) : cos_mode(m, x);
    };
    f.breakpoints = {lo, hi};
    TransportOptions opt;
    opt.breakpoints = {lo, hi};
    opt.max_panel_splits = panel_splits;
    auto rec = solve_transport(ScalarField::zero(s.grid()), TransportDrift::observable(s.observable()), &f,
                               sched.T_star, opt);
    return rec.final_state();
}

ControlSolution solve_global_control(const ScalarField& v1, double eps_rel, const ControlToStateMap& A,
                                     const RidgeOptions& opt) {
    const ControlSetup& setup = A.setup();
    const GridSpec& g = setup.grid();
    int M_t = A.bins();
    ControlSolution best = ControlSolution::zeros(setup, M_t);
    double vnorm = sobolev_norm(v1, 0);
    best.target_norm = vnorm;
    if (vnorm == 0.0) return best;
    if (std::fabs(v1.integral()) > 1e-10 * vnorm)
        fail(Errc::NonZeroMean, "control targets must be average-free");

    int cols = A.columns();
    std::size_t rows = g.size();
    double cell = g.spacing() * g.spacing();

    Eigen::MatrixXd G(cols, cols);
    Eigen::VectorXd rhs(cols), colnorm(cols);
    for (int i = 0; i < cols; ++i) {
        const auto& ci = A.column(i);
        long double dot_v = 0.0L;
        for (std::size_t r = 0; r < rows; ++r) dot_v += ci[r] * v1.values()[r];
        rhs(i) = static_cast<double>(dot_v) * cell;
        for (int j = 0; j <= i; ++j) {
            const auto& cj = A.column(j);
            long double dot = 0.0L;
            for (std::size_t r = 0; r < rows; ++r) dot += ci[r] * cj[r];
            G(i, j) = G(j, i) = static_cast<double>(dot) * cell;
        }
        colnorm(i) = std::sqrt(std::max(G(i, i), 1e-300));
    }
    // column equilibration
    Eigen::MatrixXd Ge = G;
    Eigen::VectorXd rhse = rhs;
    for (int i = 0; i < cols; ++i) {
        rhse(i) /= colnorm(i);
        for (int j = 0; j < cols; ++j) Ge(i, j) /= colnorm(i) * colnorm(j);
    }

    double best_res = vnorm;
    bool have = false;
    for (double lambda = opt.lambda_start; lambda >= opt.lambda_min * (1.0 - 1e-12);
         lambda *= opt.lambda_factor) {
        Eigen::MatrixXd M = Ge;
        for (int i = 0; i < cols; ++i) M(i, i) += lambda;
        Eigen::VectorXd sol = M.llt().solve(rhse);
        ControlSolution z = ControlSolution::zeros(setup, M_t);
        for (int c = 0; c < z.channels(); ++c)
            for (int b = 0; b < M_t; ++b) {
                int idx = A.column_index(c, b);
                z.zeta[c][b] = sol(idx) / colnorm(idx);
            }
        double res = sobolev_norm(A.apply(z) - v1, 0);
        if (!have || res < best_res) {
            best = std::move(z);
            best.lambda = lambda;
            best.residual = res;
            best.target_norm = vnorm;
            best_res = res;
            have = true;
        }
        if (best_res <= eps_rel * vnorm) return best;
    }
    fail(Errc::TargetUnreachable,
         "ridge sweep stalled at relative residual " + std::to_string(best_res / vnorm));
}

EtaEvaluator::EtaEvaluator(const ControlSetup& setup, ControlSolution solution)
    : setup_(&setup), zeta_(std::move(solution)) {
    const FlowSchedule& s = setup.schedule();
    for (int l = 1; l <= s.K; ++l) {
        breakpoints_.push_back(s.t_a(l));
        for (int b = 1; b < zeta_.M_t; ++b) breakpoints_.push_back(s.t_a(l) + b * zeta_.bin_width());
        breakpoints_.push_back(s.t_b(l));
    }
}

Vec2 EtaEvaluator::xi_point(Vec2 x, int window, double tau) const {
    Vec2 d = setup_->covering().delta(window);
    Vec2 z{wrap_2pi(x.x - d.x), wrap_2pi(x.y - d.y)};
    return setup_->table().map_point(z, tau);
}

double EtaEvaluator::hat_point(Vec2 x, double t) const {
    auto [tau, window] = setup_->schedule().tau_bar(t);
    if (window == 0) return 0.0;
    double chi = setup_->cutoffs().chi(x);
    if (chi == 0.0) return 0.0;
    Vec2 xi = xi_point(x, window, tau);
    double acc = 0.0;
    for (int c = 0; c < setup_->channels(); ++c) {
        Mode m = setup_->channel_mode(c);
        double trig = setup_->channel_is_sin(c) ? sin_mode(m, xi) : cos_mode(m, xi);
        acc += zeta_.value(c, tau) * trig;
    }
    return chi * acc;
}

double EtaEvaluator::mean_hat(double t) const {
    auto [tau, window] = setup_->schedule().tau_bar(t);
    if (window == 0) return 0.0;
    double acc = 0.0;
    for (int c = 0; c < setup_->channels(); ++c)
        acc += zeta_.value(c, tau) * setup_->moment(c, window, tau);
    return acc;
}

double EtaEvaluator::correction_point(Vec2 x, double t) const {
    const FlowSchedule& s = setup_->schedule();
    auto [tau, window] = s.tau_bar(t);
    (void)tau;
    if (window == 0) return 0.0;
    const CutoffBundle& cut = setup_->cutoffs();
    double acc = 0.0;
    double member = cut.chi_tilde_member(window, x);
    for (int j = 1; j <= window; ++j) acc -= member * mean_hat(t - 3.0 * (j - 1) * s.T_star);
    double center = cut.chi_tilde(x);
    for (int k = 1; k <= window - 1; ++k) acc += center * mean_hat(t - 3.0 * k * s.T_star);
    return acc;
}

double EtaEvaluator::tilde_point(Vec2 x, double t) const { return hat_point(x, t) + correction_point(x, t); }

void EtaEvaluator::hat_grid(double t, std::vector<double>& out) const {
    const GridSpec& g = setup_->grid();
    out.assign(g.size(), 0.0);
    auto [tau, window] = setup_->schedule().tau_bar(t);
    if (window == 0) return;

    std::vector<double> g1, g2;
    setup_->table().displacement_grid(tau, g1, g2);
    Vec2 d = setup_->covering().delta(window);
    translate_grid(g, g1, d);
    translate_grid(g, g2, d);

    const auto& chi = setup_->cutoffs().chi_grid().values();
    int C = setup_->channels();
    std::vector<double> coef(C);
    for (int c = 0; c < C; ++c) coef[c] = zeta_.value(c, tau);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            std::size_t idx = static_cast<std::size_t>(i) * g.n + j;
            if (chi[idx] == 0.0) continue;
            double b1 = g.node(i) - d.x + g1[idx];
            double b2 = g.node(j) - d.y + g2[idx];
            double acc = 0.0;
            for (int c = 0; c < C; ++c) {
                Mode m = setup_->channel_mode(c);
                double ang = m.a * b1 + m.b * b2;
                acc += coef[c] * (setup_->channel_is_sin(c) ? std::sin(ang) : std::cos(ang));
            }
            out[idx] = chi[idx] * acc;
        }
}

void EtaEvaluator::tilde_grid(double t, std::vector<double>& out) const {
    const GridSpec& g = setup_->grid();
    hat_grid(t, out);
    auto [tau, window] = setup_->schedule().tau_bar(t);
    (void)tau;
    if (window == 0) return;
    const FlowSchedule& s = setup_->schedule();
    const CutoffBundle& cut = setup_->cutoffs();

    // the same-time mean comes from the field itself so the grid quadrature of
    // the result cancels exactly; older means come from the moment table and
    // cancel pairwise between the two correction sums
    long double acc = 0.0L;
    for (double v : out) acc += v;
    double m_live = static_cast<double>(acc) * g.spacing() * g.spacing();

    double coef_member = m_live;
    for (int j = 2; j <= window; ++j) coef_member += mean_hat(t - 3.0 * (j - 1) * s.T_star);
    double coef_center = 0.0;
    for (int k = 1; k <= window - 1; ++k) coef_center += mean_hat(t - 3.0 * k * s.T_star);

    const auto& member = cut.chi_tilde_member_grid(window).values();
    const auto& center = cut.chi_tilde_grid().values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += -coef_member * member[i] + coef_center * center[i];
}

ScalarField EtaEvaluator::tilde_field(double t) const {
    std::vector<double> vals;
    tilde_grid(t, vals);
    return ScalarField::from_values(setup_->grid(), std::move(vals));
}

LocalizedControlSeries::LocalizedControlSeries(const EtaEvaluator& eta, double sigma, double T_ctrl)
    : eta_(&eta), N_(eta.setup().channels()), sigma_(sigma), T_ctrl_(T_ctrl) {
    if (sigma * T_ctrl < 1.0) fail(Errc::SigmaTooSmall, "sigma * T_ctrl must be at least 1");
    T_sigma_ = T_ctrl - 1.0 / sigma;
}

double LocalizedControlSeries::gamma_tilde(int l, double t_ref) const {
    const ControlSetup& setup = eta_->setup();
    const FlowSchedule& s = setup.schedule();
    auto [tau, window] = s.tau_bar(t_ref);
    if (window == 0) return 0.0;
    if (l >= 1 && l <= N_) return eta_->solution().value(l - 1, tau);
    if (l == N_ + 1) {
        double acc = 0.0;
        for (int k = 1; k <= window - 1; ++k) acc += eta_->mean_hat(t_ref - 3.0 * k * s.T_star);
        return acc;
    }
    if (l == N_ + 2) {
        if (window % setup.covering().sqrtK != 0) return 0.0;
        double acc = 0.0;
        for (int j = 1; j <= window; ++j) acc -= eta_->mean_hat(t_ref - 3.0 * (j - 1) * s.T_star);
        return acc;
    }
    if (l == N_ + 3) {
        double total = 0.0;
        for (int j = 1; j <= window; ++j) total += eta_->mean_hat(t_ref - 3.0 * (j - 1) * s.T_star);
        return -gamma_tilde(N_ + 2, t_ref) - total;
    }
    fail(Errc::ConfigError, "series index out of range");
}

double LocalizedControlSeries::gamma(int l, double t) const {
    if (t < T_sigma_ || t > T_ctrl_) return 0.0;
    return sigma_ * gamma_tilde(l, sigma_ * (t - T_sigma_));
}

double LocalizedControlSeries::basis(int l, Vec2 x, double t_ref) const {
    const ControlSetup& setup = eta_->setup();
    const CutoffBundle& cut = setup.cutoffs();
    if (l >= 1 && l <= N_) {
        auto [tau, window] = setup.schedule().tau_bar(t_ref);
        if (window == 0) return 0.0;
        double chi = cut.chi(x);
        if (chi == 0.0) return 0.0;
        Vec2 d = setup.covering().delta(window);
        Vec2 z{wrap_2pi(x.x - d.x), wrap_2pi(x.y - d.y)};
        Vec2 xi = setup.table().map_point(z, tau);
        Mode m = setup.channel_mode(l - 1);
        return chi * (setup.channel_is_sin(l - 1) ? sin_mode(m, xi) : cos_mode(m, xi));
    }
    if (l == N_ + 1) return cut.chi_tilde(x);
    if (l == N_ + 2) return cut.chi_tilde_diag(x);
    if (l == N_ + 3) return cut.chi_tilde_right(x);
    fail(Errc::ConfigError, "basis index out of range");
}

double LocalizedControlSeries::reconstruct(Vec2 x, double t) const {
    if (t < T_sigma_ || t > T_ctrl_) return 0.0;
    double t_ref = sigma_ * (t - T_sigma_);
    double acc = 0.0;
    for (int l = 1; l <= N_ + 3; ++l) {
        double gt = gamma_tilde(l, t_ref);
        if (gt != 0.0) acc += gt * basis(l, x, t_ref);
    }
    return sigma_ * acc;
}

void write_gamma_csv(const std::string& path, const LocalizedControlSeries& series, int samples_per_window) {
    std::ofstream out(path);
    if (!out) fail(Errc::IoError, "cannot open " + path);
    out << "l,t,value\n";
    const FlowSchedule& s = series.eta().setup().schedule();
    double Ts = series.T_sigma(), sg = series.sigma();
    for (int l = 1; l <= series.mode_channels() + 3; ++l)
        for (int w = 1; w <= s.K; ++w)
            for (int q = 0; q < samples_per_window; ++q) {
                double t_ref = s.t_a(w) + (q + 0.5) * (s.t_b(w) - s.t_a(w)) / samples_per_window;
                double t = Ts + t_ref / sg;
                out << l << "," << t << "," << series.gamma(l, t) << "\n";
            }
}

}  // namespace tsteer
