#pragma once

#include <vector>

#include "tsteer/field.hpp"

namespace tsteer {

// Covering of the torus by K overlapping squares of side l_K = 2*pi/(sqrt(K)-1),
// plus the reference square placed centrally in [L1,L2]x[H1,H2].
struct CoveringSpec {
    int K = 0;
    int sqrtK = 0;
    double l_K = 0.0;
    double L1 = 0.0, L2 = 0.0, H1 = 0.0, H2 = 0.0;
    double d = 0.0;  // margin: the control region omega is the rectangle inflated by d
    Vec2 p_K;        // bottom-left corner of the reference square

    double shift() const { return kTwoPi / sqrtK; }

    // Bottom-left corner of square l, 1-based enumeration by rows.
    Vec2 corner(int l) const {
        int i = (l - 1) % sqrtK;      // column
        int r = (l - 1) / sqrtK;      // row
        return {kTwoPi * i / sqrtK, kTwoPi * r / sqrtK};
    }

    // Shift target p_K - x_l, wrapped to (-pi, pi] per component.
    Vec2 delta(int l) const {
        Vec2 x = corner(l);
        return {wrap_pm_pi(p_K.x - x.x), wrap_pm_pi(p_K.y - x.y)};
    }

    // Point membership in square l (half-open (0, l_K)^2 relative to the corner).
    bool in_square(int l, Vec2 x) const {
        Vec2 c = corner(l);
        double r1 = wrap_2pi(x.x - c.x), r2 = wrap_2pi(x.y - c.y);
        return r1 > 0.0 && r1 < l_K && r2 > 0.0 && r2 < l_K;
    }

    bool in_rectangle(Vec2 x, double inflate = 0.0) const {
        return x.x >= L1 - inflate && x.x <= L2 + inflate && x.y >= H1 - inflate && x.y <= H2 + inflate;
    }

    // The control region omega used for support audits.
    bool in_omega(Vec2 x) const { return in_rectangle(x, d); }
};

CoveringSpec build_covering(double L1, double L2, double H1, double H2, int K, double d = 0.1);

}  // namespace tsteer
