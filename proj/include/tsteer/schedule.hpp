#pragma once

#include <vector>

#include "tsteer/covering.hpp"

namespace tsteer {

// Equal-spaced partition of the reference interval [0,1]: K blocks of three
// sub-phases of length T* = 1/(3K+2), framed by rest phases [0,T_a] and [T_b,1].
struct FlowSchedule {
    int K = 0;
    double T_star = 0.0;
    double T_a = 0.0;
    double T_b = 0.0;

    static FlowSchedule make(int K) {
        FlowSchedule s;
        s.K = K;
        s.T_star = 1.0 / (3.0 * K + 2.0);
        s.T_a = s.T_star;
        s.T_b = 1.0 - s.T_star;
        return s;
    }

    double t_a(int l) const { return (3.0 * l - 1.0) * T_star; }
    double t_b(int l) const { return 3.0 * l * T_star; }
    double t_c(int l) const { return (3.0 * l + 1.0) * T_star; }

    // Window index containing t (1..K), or 0 when t lies in no [t_a^l, t_b^l].
    int window_at(double t) const {
        int l = static_cast<int>(t / (3.0 * T_star) + 0.5);
        for (int cand = l - 1; cand <= l + 1; ++cand)
            if (cand >= 1 && cand <= K && t >= t_a(cand) && t <= t_b(cand)) return cand;
        return 0;
    }

    double tau_member(int l, double t) const {
        if (t < t_a(l) || t > t_b(l)) return 0.0;
        return T_b + t - t_a(l);
    }

    // (tau_bar(t), active window); tau_bar = 0 outside all windows.
    std::pair<double, int> tau_bar(double t) const {
        int l = window_at(t);
        return {l == 0 ? 0.0 : tau_member(l, t), l};
    }
};

// The spatially constant return-method profile with closed-form displacement.
// Each block l shifts the torus so that square l lands on the reference
// square, pauses for [t_a^l, t_b^l], and shifts back.
class ReturnProfile {
  public:
    explicit ReturnProfile(const CoveringSpec& cov);

    const FlowSchedule& schedule() const { return sched_; }
    const CoveringSpec& covering() const { return cov_; }

    Vec2 value(double t) const;         // profile at time t
    Vec2 displacement(double t) const;  // integral of the profile over [0, t]
    double max_speed() const;

    // Flow of the profile: x + D(t) - D(s), wrapped to the torus.
    Vec2 flow(Vec2 x, double s, double t) const {
        Vec2 d = displacement(t) - displacement(s);
        return {wrap_2pi(x.x + d.x), wrap_2pi(x.y + d.y)};
    }

  private:
    CoveringSpec cov_;
    FlowSchedule sched_;
    std::vector<Vec2> delta_;  // shift targets per block, wrapped to (-pi, pi]
};

}  // namespace tsteer
