#pragma once

#include <memory>

#include "tsteer/cutoffs.hpp"
#include "tsteer/flow_map.hpp"
#include "tsteer/saturation.hpp"
#include "tsteer/trajectory.hpp"

namespace tsteer {

// Flow, cutoff, and moment machinery shared by every control evaluation for a
// fixed covering/generator/grid choice. Independent of any solved coefficients.
class ControlSetup {
  public:
    ControlSetup(const CoveringSpec& cov, GridSpec grid, GeneratorSet generator, int M_jump = 64,
                 FlowTableOptions table_options = {}, double drift_amp_scale = 12.0);

    const CoveringSpec& covering() const { return cov_; }
    const GridSpec& grid() const { return grid_; }
    const GeneratorSet& generator() const { return gen_; }
    const CutoffBundle& cutoffs() const { return cutoffs_; }
    const ReturnProfile& profile() const { return profile_; }
    const ObservableSpec& observable() const { return obs_; }
    const FlowSchedule& schedule() const { return profile_.schedule(); }
    const FlowTable& table() const { return table_; }

    int channels() const { return gen_.channel_count(); }
    Mode channel_mode(int c) const { return gen_.modes[c % gen_.modes.size()]; }
    bool channel_is_sin(int c) const { return c < static_cast<int>(gen_.modes.size()); }

    // chi(. + delta_l) sampled on the grid, 1-based window index
    const std::vector<double>& chi_shift(int window) const { return chi_shift_[window - 1]; }

    // integral of chi(z + delta_window) trig_ch(Psi(z, tau)) dz, interpolated
    // between the table's stored nodes
    double moment(int channel, int window, double tau) const;

  private:
    CoveringSpec cov_;
    GridSpec grid_;
    GeneratorSet gen_;
    CutoffBundle cutoffs_;
    ReturnProfile profile_;
    ObservableSpec obs_;
    FlowTable table_;
    std::vector<std::vector<double>> chi_shift_;           // per window
    std::vector<std::vector<std::vector<double>>> moments_;  // [channel][window][node]
};

// Piecewise-constant control coefficients on M_t bins of [T_b, 1].
struct ControlSolution {
    std::vector<Mode> modes;
    int M_t = 0;
    double T_b = 0.0;
    double T_star = 0.0;
    std::vector<std::vector<double>> zeta;  // [channel][bin]
    double lambda = 0.0;
    double residual = 0.0;
    double target_norm = 0.0;

    int channels() const { return static_cast<int>(zeta.size()); }
    double bin_width() const { return T_star / M_t; }
    int bin_of(double tau) const;
    double value(int channel, double tau) const { return zeta[channel][bin_of(tau)]; }

    static ControlSolution zeros(const ControlSetup& setup, int M_t);
};

void write_control_csv(const std::string& path, const ControlSolution& z);

// Dense control-to-state operator: one column per (mode, parity, time bin),
// each the terminal state of the driven transport problem on [0, T*].
class ControlToStateMap {
  public:
    ControlToStateMap(const ControlSetup& setup, int M_t, int gauss_per_piece = 2);

    int columns() const { return static_cast<int>(cols_.size()); }
    int column_index(int channel, int bin) const { return channel * M_t_ + bin; }
    const std::vector<double>& column(int idx) const { return cols_[idx]; }
    int bins() const { return M_t_; }
    const ControlSetup& setup() const { return *setup_; }

    ScalarField apply(const ControlSolution& z) const;

    // Reference route for cross-checks: the same column via solve_transport.
    ScalarField reference_column(int channel, int bin, int panel_splits = 1) const;

  private:
    const ControlSetup* setup_;
    int M_t_;
    std::vector<std::vector<double>> cols_;
};

struct RidgeOptions {
    double lambda_start = 1e-2;
    double lambda_min = 1e-10;
    double lambda_factor = 0.1;
};

// Ridge-regularized least squares with geometric lambda decrease until the
// relative residual target is met. Columns are equilibrated to unit L2 norm
// inside the solve. TargetUnreachable reports the best residual.
ControlSolution solve_global_control(const ScalarField& v1, double eps_rel, const ControlToStateMap& A,
                                     const RidgeOptions& opt = {});

// The localized control force and its average-free version.
class EtaEvaluator {
  public:
    EtaEvaluator(const ControlSetup& setup, ControlSolution solution);

    const ControlSetup& setup() const { return *setup_; }
    const ControlSolution& solution() const { return zeta_; }

    // pointwise path (flow from the table, moments from the moment table)
    double hat_point(Vec2 x, double t) const;
    double tilde_point(Vec2 x, double t) const;

    // grid path; tilde_grid has exactly zero grid mean by construction
    void hat_grid(double t, std::vector<double>& out) const;
    void tilde_grid(double t, std::vector<double>& out) const;
    ScalarField tilde_field(double t) const;

    // spatial mean of eta_hat(. , t) from the moment table
    double mean_hat(double t) const;

    // jump times of the control in reference time (window and bin edges)
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    // correction terms of eta_tilde - eta_hat at (x, t), pointwise path
    double correction_point(Vec2 x, double t) const;

  private:
    Vec2 xi_point(Vec2 x, int window, double tau) const;

    const ControlSetup* setup_;
    ControlSolution zeta_;
    std::vector<double> breakpoints_;
};

// Coefficient series of the sigma-scaled control in the basis
// (transported modes, chi_tilde, chi_tilde_diag, chi_tilde_right).
class LocalizedControlSeries {
  public:
    LocalizedControlSeries(const EtaEvaluator& eta, double sigma, double T_ctrl);

    int mode_channels() const { return N_; }
    double sigma() const { return sigma_; }
    double T_sigma() const { return T_sigma_; }
    const EtaEvaluator& eta() const { return *eta_; }

    // l is 1-based; l <= N are the transported-mode channels,
    // N+1..N+3 the average-correction channels
    double gamma_tilde(int l, double t_ref) const;
    double gamma(int l, double t) const;

    // basis evaluators: eta_l(x, t_ref) for l <= N (time-dependent) and
    // eta_l(x) for the correction channels
    double basis(int l, Vec2 x, double t_ref) const;

    // reconstruction of sigma * eta_tilde(x, sigma (t - T_sigma)) from the series
    double reconstruct(Vec2 x, double t) const;

  private:
    const EtaEvaluator* eta_;
    int N_;
    double sigma_, T_ctrl_, T_sigma_;
};

void write_gamma_csv(const std::string& path, const LocalizedControlSeries& series, int samples_per_window = 8);

}  // namespace tsteer
