#include "tsteer/flow_map.hpp"

#include <algorithm>
#include <cmath>

#include "tsteer/errors.hpp"

namespace tsteer {

namespace {

// One RK4 step of dX/dtau = ystar(X, tau - Tb); h may be negative.
inline Vec2 rk4_step(Vec2 x, double tau, double h, double Tb, const ObservableSpec& obs) {
    Vec2 k1 = obs.drift(x, tau - Tb);
    Vec2 k2 = obs.drift(x + k1 * (0.5 * h), tau + 0.5 * h - Tb);
    Vec2 k3 = obs.drift(x + k2 * (0.5 * h), tau + 0.5 * h - Tb);
    Vec2 k4 = obs.drift(x + k3 * h, tau + h - Tb);
    return x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
}

Vec2 advance_observable(Vec2 x, double s, double t, double Tb, const ObservableSpec& obs, double h_flow) {
    double span = t - s;
    if (span == 0.0) return x;
    int steps = std::max(1, static_cast<int>(std::ceil(std::fabs(span) / h_flow)));
    double h = span / steps;
    Vec2 cur = x;
    for (int k = 0; k < steps; ++k) cur = rk4_step(cur, s + k * h, h, Tb, obs);
    return cur;
}

}  // namespace

Vec2 flow_U(Vec2 x, double s, double t, const CompositeDrift& drift, double h_flow) {
    const FlowSchedule& sched = drift.schedule();
    if (h_flow > sched.T_star / 50.0)
        fail(Errc::StepTooLarge, "h_flow exceeds T*/50");
    double Tb = sched.T_b;
    Vec2 cur = x;
    if (s <= t) {
        double mid = std::clamp(Tb, s, t);
        cur = drift.profile().flow(cur, s, std::min(mid, t));
        if (t > mid) cur = advance_observable(cur, mid, t, Tb, drift.observable(), h_flow);
    } else {
        double mid = std::clamp(Tb, t, s);
        if (s > mid) cur = advance_observable(cur, s, mid, Tb, drift.observable(), h_flow);
        cur = drift.profile().flow(cur, std::min(mid, s), t);
    }
    return {wrap_2pi(cur.x), wrap_2pi(cur.y)};
}

FlowTable::FlowTable(GridSpec g, const ReturnProfile& profile, const ObservableSpec& obs, FlowTableOptions opt)
    : grid_(g), Tb_(profile.schedule().T_b), opt_(opt) {
    double Ts = profile.schedule().T_star;
    if (opt.align_kinks) {
        std::vector<double> pts;
        for (double k : obs.kinks()) pts.push_back(Tb_ + k);
        edges_ = merge_breakpoints(Tb_, 1.0, pts, 1e-15);
    } else {
        edges_.resize(opt.uniform_pieces + 1);
        for (int p = 0; p <= opt.uniform_pieces; ++p) edges_[p] = Tb_ + Ts * p / opt.uniform_pieces;
        edges_.back() = 1.0;
    }
    int sub = std::clamp(opt.nodes_per_piece, 1, 7);
    opt_.nodes_per_piece = sub;

    int pieces = static_cast<int>(edges_.size()) - 1;
    piece_first_node_.resize(pieces);
    for (int p = 0; p < pieces; ++p) {
        piece_first_node_[p] = p * sub;
        for (int i = (p == 0 ? 0 : 1); i <= sub; ++i)
            node_taus_.push_back(edges_[p] + (edges_[p + 1] - edges_[p]) * i / sub);
    }

    // Integrate the whole grid backward from tau = 1, storing every node.
    std::size_t nn = g.size();
    int nodes = static_cast<int>(node_taus_.size());
    gx_.assign(nodes, std::vector<double>(nn, 0.0));
    gy_.assign(nodes, std::vector<double>(nn, 0.0));
    std::vector<double> cx(nn), cy(nn);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            cx[static_cast<std::size_t>(i) * g.n + j] = g.node(i);
            cy[static_cast<std::size_t>(i) * g.n + j] = g.node(j);
        }
    for (int node = nodes - 1; node >= 0; --node) {
        if (node < nodes - 1) {
            double t_hi = node_taus_[node + 1], t_lo = node_taus_[node];
            for (std::size_t idx = 0; idx < nn; ++idx) {
                Vec2 next = rk4_step({cx[idx], cy[idx]}, t_hi, t_lo - t_hi, Tb_, obs);
                cx[idx] = next.x;
                cy[idx] = next.y;
            }
        }
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                std::size_t idx = static_cast<std::size_t>(i) * g.n + j;
                gx_[node][idx] = cx[idx] - g.node(i);
                gy_[node][idx] = cy[idx] - g.node(j);
            }
    }
}

FlowTable::TauStencil FlowTable::stencil(double tau) const {
    double t = std::clamp(tau, Tb_, 1.0);
    int pieces = static_cast<int>(edges_.size()) - 1;
    int p = static_cast<int>(std::upper_bound(edges_.begin(), edges_.end(), t) - edges_.begin()) - 1;
    p = std::clamp(p, 0, pieces - 1);
    int sub = opt_.nodes_per_piece;
    TauStencil w;
    w.first_node = piece_first_node_[p];
    w.count = sub + 1;
    // Lagrange weights over the piece's nodes.
    for (int i = 0; i < w.count; ++i) {
        double num = 1.0, den = 1.0;
        double ti = node_taus_[w.first_node + i];
        for (int k = 0; k < w.count; ++k) {
            if (k == i) continue;
            double tk = node_taus_[w.first_node + k];
            num *= (t - tk);
            den *= (ti - tk);
        }
        w.w[i] = num / den;
    }
    return w;
}

void FlowTable::displacement_grid(double tau, std::vector<double>& g1, std::vector<double>& g2) const {
    TauStencil w = stencil(tau);
    std::size_t nn = grid_.size();
    g1.assign(nn, 0.0);
    g2.assign(nn, 0.0);
    for (int i = 0; i < w.count; ++i) {
        const auto& nx = gx_[w.first_node + i];
        const auto& ny = gy_[w.first_node + i];
        double c = w.w[i];
        for (std::size_t idx = 0; idx < nn; ++idx) {
            g1[idx] += c * nx[idx];
            g2[idx] += c * ny[idx];
        }
    }
}

Vec2 FlowTable::displacement_point(Vec2 z, double tau) const {
    TauStencil tw = stencil(tau);
    int n = grid_.n;
    double h = grid_.spacing();
    double fx = z.x / h, fy = z.y / h;
    int i0 = static_cast<int>(std::floor(fx)), j0 = static_cast<int>(std::floor(fy));
    double ux = fx - i0, uy = fy - j0;
    // cubic Lagrange on 4 points per axis, offsets -1..2
    double wx[4], wy[4];
    auto cubic = [](double u, double* w) {
        w[0] = -u * (u - 1.0) * (u - 2.0) / 6.0;
        w[1] = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
        w[2] = -(u + 1.0) * u * (u - 2.0) / 2.0;
        w[3] = (u + 1.0) * u * (u - 1.0) / 6.0;
    };
    cubic(ux, wx);
    cubic(uy, wy);
    Vec2 acc{0.0, 0.0};
    for (int t = 0; t < tw.count; ++t) {
        const auto& nx = gx_[tw.first_node + t];
        const auto& ny = gy_[tw.first_node + t];
        double sx = 0.0, sy = 0.0;
        for (int a = 0; a < 4; ++a) {
            int ia = ((i0 + a - 1) % n + n) % n;
            double rowx = 0.0, rowy = 0.0;
            for (int b = 0; b < 4; ++b) {
                int jb = ((j0 + b - 1) % n + n) % n;
                std::size_t idx = static_cast<std::size_t>(ia) * n + jb;
                rowx += wy[b] * nx[idx];
                rowy += wy[b] * ny[idx];
            }
            sx += wx[a] * rowx;
            sy += wx[a] * rowy;
        }
        acc.x += tw.w[t] * sx;
        acc.y += tw.w[t] * sy;
    }
    return acc;
}

Vec2 XiMap::operator()(Vec2 x, double t) const {
    auto [tau, window] = profile_->schedule().tau_bar(t);
    if (window == 0) fail(Errc::InactiveTime, "flow map queried outside the control windows");
    Vec2 y = profile_->flow(x, t, 0.0);
    return table_->map_point(y, tau);
}

}  // namespace tsteer
