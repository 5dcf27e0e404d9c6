#include "tsteer/observable.hpp"

#include <algorithm>
#include <cmath>

#include "tsteer/errors.hpp"

namespace tsteer {

ObservableSpec::ObservableSpec(std::vector<Mode> modes, double T_star, int M_jump, double amp_scale)
    : modes_(std::move(modes)), T_star_(T_star), M_jump_(M_jump) {
    if (modes_.empty()) fail(Errc::ConfigError, "observable family needs at least one mode");
    if (M_jump_ < 2 || M_jump_ % 2 != 0) fail(Errc::ConfigError, "jump count must be even and >= 2");
    spacing_ = T_star_ / M_jump_;
    amplitude_ = amp_scale * static_cast<double>(M_jump_) / (T_star_ * T_star_);
    int C = channels();
    offsets_.resize(C);
    for (int c = 0; c < C; ++c) offsets_[c] = (c + 0.5) / C;
    for (int c = 0; c < C; ++c)
        for (int j = 0; j < M_jump_; ++j) kinks_.push_back((j + offsets_[c]) * spacing_);
    std::sort(kinks_.begin(), kinks_.end());
}

double ObservableSpec::phi_channel(int c, double t) const {
    if (t <= 0.0) return 1.0;
    // jumps at (j + o_c) * spacing, j = 0..M-1
    int nj = static_cast<int>(std::floor(t / spacing_ - offsets_[c])) + 1;
    nj = std::clamp(nj, 0, M_jump_);
    return (nj % 2 == 0) ? 1.0 : -1.0;
}

double ObservableSpec::int_phi_channel(int c, double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= T_star_) t = T_star_;
    double o = offsets_[c];
    int nj = static_cast<int>(std::floor(t / spacing_ - o)) + 1;
    nj = std::clamp(nj, 0, M_jump_);
    if (nj == 0) return t;
    // integral accumulated up to the nj-th jump: the first segment contributes
    // o*h, each later full segment alternates +-h
    double at_last_jump = o * spacing_ + (((nj - 1) % 2 == 1) ? -spacing_ : 0.0);
    double t_last = (nj - 1 + o) * spacing_;
    double sign = (nj % 2 == 0) ? 1.0 : -1.0;
    return at_last_jump + sign * (t - t_last);
}

Vec2 ObservableSpec::drift(Vec2 x, double t) const {
    Vec2 acc{0.0, 0.0};
    int C = channels();
    for (int c = 0; c < C; ++c) {
        Mode l = channel_mode(c);
        double trig = channel_is_sin(c) ? sin_mode(l, x) : cos_mode(l, x);
        acc = acc + l.perp() * (psi(c, t) * trig);
    }
    return acc;
}

Vec2 ObservableSpec::drift_dt(Vec2 x, double t) const {
    Vec2 acc{0.0, 0.0};
    int C = channels();
    for (int c = 0; c < C; ++c) {
        Mode l = channel_mode(c);
        double trig = channel_is_sin(c) ? sin_mode(l, x) : cos_mode(l, x);
        double dpsi = amplitude_ * (-int_phi_channel(c, t) + phi(t) * phi_channel(c, t));
        acc = acc + l.perp() * (dpsi * trig);
    }
    return acc;
}

}  // namespace tsteer
