#pragma once

#include <functional>
#include <span>

#include "tsteer/observable.hpp"
#include "tsteer/trajectory.hpp"

namespace tsteer {

// Drift for the linear transport solves.
struct TransportDrift {
    enum class Kind {
        Zero,
        ConstantProfile,  // the return profile, spatially constant
        Observable,       // the observable field on its own [0, T*] clock
        Composite,        // profile plus observable on [T_b, 1]
    };
    Kind kind = Kind::Zero;
    const ReturnProfile* profile = nullptr;
    const ObservableSpec* obs = nullptr;

    static TransportDrift zero() { return {}; }
    static TransportDrift constant_profile(const ReturnProfile& p) {
        return {Kind::ConstantProfile, &p, nullptr};
    }
    static TransportDrift observable(const ObservableSpec& o) { return {Kind::Observable, nullptr, &o}; }
    static TransportDrift composite(const ReturnProfile& p, const ObservableSpec& o) {
        return {Kind::Composite, &p, &o};
    }
};

struct TransportOptions {
    std::vector<double> breakpoints;  // forcing jumps; quadrature panels align
    int gauss_points = 3;             // forcing quadrature per panel
    int max_panel_splits = 1;         // subdivision of each smooth panel
    // semi-Lagrangian controls
    double dt = 0.0;                  // 0: one step per panel
    bool align_drift_kinks = true;
    int pad_factor = 4;
    int interp_order = 8;
    int snapshot_stride = 0;
};

// Linear transport  dv/dt + (drift . grad) v = forcing  on [0, T].
// Spatially constant drift advances by exact spectral phase shifts; the
// observable drift uses backward semi-Lagrangian characteristics.
TrajectoryRecord solve_transport(const ScalarField& v0, const TransportDrift& drift, const Forcing* forcing,
                                 double T, const TransportOptions& opt = {});

// Pointwise oracle for the constant-drift problem: integrates the forcing
// along the explicit characteristics of the return profile.
double transport_characteristics_value(Vec2 x, double T, const std::function<double(Vec2)>& v0,
                                       const ReturnProfile& drift,
                                       const std::function<double(Vec2, double)>& forcing,
                                       std::span<const double> breakpoints, int gauss_points = 8,
                                       int panel_splits = 1);

// Band-limited upsampling plus tensor Lagrange interpolation.
class PaddedInterpolant {
  public:
    PaddedInterpolant(const ScalarField& f, int pad_factor = 4, int order = 8);
    double operator()(Vec2 x) const;

  private:
    int nf_ = 0;
    int order_ = 8;
    std::vector<double> fine_;
};

}  // namespace tsteer
