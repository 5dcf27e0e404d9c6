#pragma once

#include <vector>

#include "tsteer/modes.hpp"
#include "tsteer/schedule.hpp"

namespace tsteer {

// Finite surrogate of an observable coefficient family on [0, T*]:
// phi(t) = T* - t, square-wave members phi_c with values in {-1, 1} whose jump
// grids are mutually offset, and derived coefficients
// psi_c(t) = amp * phi(t) * int_0^t phi_c. The amplitude normalization keeps
// the drift built from psi at order one.
class ObservableSpec {
  public:
    // amp_scale rescales the psi family; 0 silences the drift entirely
    // (quadrature-only oracles)
    ObservableSpec(std::vector<Mode> modes, double T_star, int M_jump = 64, double amp_scale = 1.0);

    const std::vector<Mode>& modes() const { return modes_; }
    int channels() const { return static_cast<int>(2 * modes_.size()); }
    double T_star() const { return T_star_; }
    int jumps_per_channel() const { return M_jump_; }

    // channel c: 0..N/2-1 sine members, N/2..N-1 cosine members
    Mode channel_mode(int c) const { return modes_[c % modes_.size()]; }
    bool channel_is_sin(int c) const { return c < static_cast<int>(modes_.size()); }

    double phi(double t) const { return T_star_ - t; }
    double phi_channel(int c, double t) const;      // square wave, +1 at t = 0
    double int_phi_channel(int c, double t) const;  // running integral (piecewise linear)
    double psi(int c, double t) const { return amplitude_ * phi(t) * int_phi_channel(c, t); }

    // Observable drift at reference time t in [0, T*].
    Vec2 drift(Vec2 x, double t) const;
    // d(drift)/dt, defined away from the jump grid.
    Vec2 drift_dt(Vec2 x, double t) const;

    // Sorted jump times of all channels inside (0, T*).
    const std::vector<double>& kinks() const { return kinks_; }

  private:
    std::vector<Mode> modes_;
    double T_star_;
    int M_jump_;
    double spacing_;    // T*/M_jump
    double amplitude_;  // M_jump / T*^2
    std::vector<double> offsets_;
    std::vector<double> kinks_;
};

// Composite drift: the return profile plus the observable field switched on
// during [T_b, 1].
class CompositeDrift {
  public:
    CompositeDrift(const ReturnProfile& profile, const ObservableSpec& obs)
        : profile_(&profile), obs_(&obs) {}

    const ReturnProfile& profile() const { return *profile_; }
    const ObservableSpec& observable() const { return *obs_; }
    const FlowSchedule& schedule() const { return profile_->schedule(); }

    Vec2 value(Vec2 x, double t) const {
        Vec2 v = profile_->value(t);
        double Tb = profile_->schedule().T_b;
        if (t >= Tb && t <= 1.0) v = v + obs_->drift(x, t - Tb);
        return v;
    }

  private:
    const ReturnProfile* profile_;
    const ObservableSpec* obs_;
};

}  // namespace tsteer
