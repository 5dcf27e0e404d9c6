#include "tsteer/schedule.hpp"

#include <cmath>

namespace tsteer {

ReturnProfile::ReturnProfile(const CoveringSpec& cov) : cov_(cov), sched_(FlowSchedule::make(cov.K)) {
    delta_.resize(cov.K + 1);
    for (int l = 1; l <= cov.K; ++l) delta_[l] = cov.delta(l);
}

Vec2 ReturnProfile::value(double t) const {
    const double Ts = sched_.T_star, half = 0.5 * Ts;
    if (t <= sched_.T_a || t >= sched_.T_b) return {0.0, 0.0};
    int l = static_cast<int>((t - sched_.T_a) / (3.0 * Ts)) + 1;
    if (l < 1) l = 1;
    if (l > cov_.K) l = cov_.K;
    double u = t - sched_.t_c(l - 1);
    const Vec2& d = delta_[l];
    if (u < half) return {d.x * unit_bump01(u / half) / half, 0.0};
    if (u < Ts) return {0.0, d.y * unit_bump01((u - half) / half) / half};
    if (u < 2.0 * Ts) return {0.0, 0.0};
    if (u < 2.0 * Ts + half) return {-d.x * unit_bump01((u - 2.0 * Ts) / half) / half, 0.0};
    return {0.0, -d.y * unit_bump01((u - 2.0 * Ts - half) / half) / half};
}

Vec2 ReturnProfile::displacement(double t) const {
    const double Ts = sched_.T_star, half = 0.5 * Ts;
    if (t <= sched_.T_a || t >= sched_.T_b) return {0.0, 0.0};
    int l = static_cast<int>((t - sched_.T_a) / (3.0 * Ts)) + 1;
    if (l < 1) l = 1;
    if (l > cov_.K) l = cov_.K;
    double u = t - sched_.t_c(l - 1);
    const Vec2& d = delta_[l];
    if (u < half) return {d.x * unit_bump01_cumulative(u / half), 0.0};
    if (u < Ts) return {d.x, d.y * unit_bump01_cumulative((u - half) / half)};
    if (u < 2.0 * Ts) return d;
    if (u < 2.0 * Ts + half) return {d.x * (1.0 - unit_bump01_cumulative((u - 2.0 * Ts) / half)), d.y};
    return {0.0, d.y * (1.0 - unit_bump01_cumulative((u - 2.0 * Ts - half) / half))};
}

double ReturnProfile::max_speed() const {
    // peak of unit_bump01 ~ 2; shifts are at most pi per component
    double peak = 0.0;
    for (int i = 1; i < 256; ++i) peak = std::max(peak, unit_bump01(i / 256.0));
    double dmax = 0.0;
    for (int l = 1; l <= cov_.K; ++l)
        dmax = std::max({dmax, std::fabs(delta_[l].x), std::fabs(delta_[l].y)});
    return dmax * peak / (0.5 * sched_.T_star);
}

}  // namespace tsteer
