#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tsteer/errors.hpp"
#include "tsteer/flow_map.hpp"
#include "tsteer/spectral.hpp"

using namespace tsteer;

namespace {

struct Fixture {
    CoveringSpec cov = build_covering(0.5, 4.7, 0.5, 4.7, 36, 0.1);
    ReturnProfile profile{cov};
    ObservableSpec obs{{Mode{1, 0}, Mode{0, 1}}, FlowSchedule::make(36).T_star};
    CompositeDrift drift{profile, obs};
};

}  // namespace

TEST_CASE("schedule partitions the reference interval") {
    FlowSchedule s = FlowSchedule::make(36);
    CHECK(s.T_star == doctest::Approx(1.0 / 110.0).epsilon(1e-15));
    CHECK(s.t_c(0) == doctest::Approx(s.T_a));
    CHECK(s.t_c(36) == doctest::Approx(s.T_b));
    for (int l = 1; l <= 36; ++l) {
        CHECK(s.t_b(l) - s.t_a(l) == doctest::Approx(s.T_star));
        CHECK(s.t_c(l) - s.t_b(l) == doctest::Approx(s.T_star));
        CHECK(s.t_a(l) - s.t_c(l - 1) == doctest::Approx(s.T_star));
    }
    CHECK(s.window_at(0.5 * (s.t_a(3) + s.t_b(3))) == 3);
    CHECK(s.window_at(s.t_c(3)) == 0);

    SUBCASE("tau maps each window onto [T_b, 1]") {
        CHECK(s.tau_member(5, s.t_a(5)) == doctest::Approx(s.T_b));
        CHECK(s.tau_member(5, s.t_b(5)) == doctest::Approx(1.0));
        CHECK(s.tau_member(5, s.t_a(5) - 1e-4) == 0.0);
        CHECK(s.tau_bar(0.0).first == 0.0);
        CHECK(s.tau_bar(1.0).first == 0.0);
    }
}

TEST_CASE("return profile") {
    Fixture f;
    const FlowSchedule& s = f.profile.schedule();

    SUBCASE("vanishes on the rest phases") {
        for (double t : {0.0, 0.3 * s.T_a, s.T_a, s.T_b, 1.0 - 0.3 * s.T_star, 1.0}) {
            Vec2 v = f.profile.value(t);
            CHECK(v.x == 0.0);
            CHECK(v.y == 0.0);
        }
    }

    SUBCASE("quadrature of the profile matches the closed-form displacement") {
        // panels subdivide each smooth half-phase
        std::vector<double> edges;
        edges.push_back(s.T_a);
        for (int l = 1; l <= 36; ++l)
            for (int k = 1; k <= 6 * 16; ++k) edges.push_back(s.t_c(l - 1) + k * s.T_star / 32.0);
        for (double t : {0.01, 0.1, 0.34, 0.52, 0.97}) {
            Vec2 d{0.0, 0.0};
            double prev = 0.0;
            for (double e : edges) {
                double hi = std::min(e, t);
                if (hi > prev) {
                    d.x += gauss_panel([&](double u) { return f.profile.value(u).x; }, prev, hi, 8);
                    d.y += gauss_panel([&](double u) { return f.profile.value(u).y; }, prev, hi, 8);
                    prev = hi;
                }
            }
            Vec2 closed = f.profile.displacement(t);
            CHECK(std::fabs(d.x - closed.x) <= 1e-9);
            CHECK(std::fabs(d.y - closed.y) <= 1e-9);
        }
    }

    SUBCASE("total displacement over [0,1] vanishes") {
        Vec2 d = f.profile.displacement(1.0);
        CHECK(std::fabs(d.x) <= 1e-15);
        CHECK(std::fabs(d.y) <= 1e-15);
    }

    SUBCASE("first shift phase integrates to the first shift target") {
        Vec2 delta1 = f.cov.delta(1);
        double got = gauss_panel([&](double u) { return f.profile.value(u).x; }, s.t_c(0), s.t_c(0) + s.T_star / 2.0, 8);
        // panelized for accuracy
        got = 0.0;
        for (int k = 0; k < 16; ++k) {
            double a = s.t_c(0) + k * s.T_star / 32.0, b = a + s.T_star / 32.0;
            got += gauss_panel([&](double u) { return f.profile.value(u).x; }, a, b, 8);
        }
        CHECK(got == doctest::Approx(delta1.x).epsilon(1e-9));
    }

    SUBCASE("flow properties") {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> dist(0.0, kTwoPi);
        for (int trial = 0; trial < 100; ++trial) {
            Vec2 x{dist(rng), dist(rng)};
            Vec2 once = f.profile.flow(x, 0.0, 1.0);
            CHECK(circle_dist(once.x, x.x) <= 1e-12);
            CHECK(circle_dist(once.y, x.y) <= 1e-12);
            Vec2 same = f.profile.flow(x, 0.4, 0.4);
            CHECK(same.x == doctest::Approx(wrap_2pi(x.x)));
        }
        // squares pause on the reference square
        for (int l : {1, 7, 36}) {
            Vec2 xl = f.cov.corner(l);
            for (double frac : {0.0, 0.37, 1.0}) {
                double t = s.t_a(l) + frac * (s.t_b(l) - s.t_a(l));
                Vec2 y = f.profile.flow(xl, 0.0, t);
                CHECK(circle_dist(y.x, f.cov.p_K.x) <= 1e-12);
                CHECK(circle_dist(y.y, f.cov.p_K.y) <= 1e-12);
            }
        }
    }
}

TEST_CASE("observable family") {
    Fixture f;
    double Ts = f.obs.T_star();

    SUBCASE("coefficients vanish at both endpoints") {
        for (int c = 0; c < f.obs.channels(); ++c) {
            CHECK(f.obs.psi(c, 0.0) == 0.0);
            CHECK(std::fabs(f.obs.psi(c, Ts)) <= 1e-15);
        }
    }

    SUBCASE("running integral matches quadrature of the square wave") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> dist(0.0, Ts);
        for (int c = 0; c < f.obs.channels(); ++c)
            for (int trial = 0; trial < 25; ++trial) {
                double t = dist(rng);
                // Riemann sum with fine midpoint panels (robust across jumps)
                int nq = 4000;
                double acc = 0.0;
                for (int k = 0; k < nq; ++k) acc += f.obs.phi_channel(c, (k + 0.5) * t / nq) * (t / nq);
                CHECK(f.obs.int_phi_channel(c, t) == doctest::Approx(acc).epsilon(5e-4));
            }
    }

    SUBCASE("amplitudes are order one") {
        double peak = 0.0;
        for (int c = 0; c < f.obs.channels(); ++c)
            for (int k = 0; k <= 2000; ++k) peak = std::max(peak, std::fabs(f.obs.psi(c, Ts * k / 2000.0)));
        CHECK(peak > 0.05);
        CHECK(peak <= 1.0);
    }

    SUBCASE("drift is divergence-free and vanishes at t=0") {
        GridSpec g = GridSpec::make(64);
        for (double t : {0.0, 0.31 * Ts, 0.77 * Ts}) {
            VectorField2 u = VectorField2::sample(g, [&](double x1, double x2) { return f.obs.drift({x1, x2}, t); });
            if (t == 0.0) {
                CHECK(sobolev_norm(u, 0) <= 1e-14);
            } else {
                CHECK(sobolev_norm(divergence(u), 0) <= 1e-12 * std::max(1.0, sobolev_norm(u, 1)));
            }
        }
    }

    SUBCASE("composite drift reduces to the profile before T_b") {
        const FlowSchedule& s = f.profile.schedule();
        for (double t : {0.2, 0.5, s.T_b - 1e-9}) {
            Vec2 v = f.drift.value({1.0, 2.0}, t);
            Vec2 y = f.profile.value(t);
            CHECK(v.x == y.x);
            CHECK(v.y == y.y);
        }
    }
}

TEST_CASE("flow_U") {
    Fixture f;
    const FlowSchedule& s = f.profile.schedule();
    double h_flow = s.T_star / 200.0;

    SUBCASE("identity at equal times") {
        Vec2 x{1.2, 3.4};
        Vec2 y = flow_U(x, 0.5, 0.5, f.drift, h_flow);
        CHECK(y.x == doctest::Approx(x.x));
        CHECK(y.y == doctest::Approx(x.y));
    }

    SUBCASE("matches the translation flow before T_b") {
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> dist(0.0, kTwoPi);
        for (int trial = 0; trial < 20; ++trial) {
            Vec2 x{dist(rng), dist(rng)};
            double a = 0.1 + 0.3 * dist(rng) / kTwoPi, b = 0.6 + 0.3 * dist(rng) / kTwoPi;
            Vec2 u = flow_U(x, a, b, f.drift, h_flow);
            Vec2 y = f.profile.flow(x, a, b);
            CHECK(circle_dist(u.x, y.x) <= 1e-8);
            CHECK(circle_dist(u.y, y.y) <= 1e-8);
        }
    }

    SUBCASE("forward-backward composition returns to the start") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> dist(0.0, kTwoPi);
        for (int trial = 0; trial < 10; ++trial) {
            Vec2 x{dist(rng), dist(rng)};
            Vec2 fwd = flow_U(x, 0.3, 1.0, f.drift, h_flow);
            Vec2 back = flow_U(fwd, 1.0, 0.3, f.drift, h_flow);
            CHECK(circle_dist(back.x, x.x) <= 1e-6);
            CHECK(circle_dist(back.y, x.y) <= 1e-6);
        }
    }

    SUBCASE("step limit enforced") {
        CHECK_THROWS_AS(flow_U({0, 0}, 0.0, 1.0, f.drift, s.T_star / 10.0), Error);
    }
}

TEST_CASE("flow table and composite map") {
    Fixture f;
    GridSpec g = GridSpec::make(64);
    FlowTable table(g, f.profile, f.obs);
    const FlowSchedule& s = f.profile.schedule();

    SUBCASE("table matches direct backward integration") {
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> dist(0.0, kTwoPi);
        std::uniform_real_distribution<double> tdist(s.T_b, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 30; ++trial) {
            Vec2 z{dist(rng), dist(rng)};
            double tau = tdist(rng);
            Vec2 via_table = table.map_point(z, tau);
            Vec2 direct = flow_U(z, 1.0, tau, f.drift, s.T_star / 2000.0);
            worst = std::max({worst, circle_dist(via_table.x, direct.x), circle_dist(via_table.y, direct.y)});
        }
        CHECK(worst <= 1e-6);
    }

    SUBCASE("xi map pauses reduce to the pure translation at the window end") {
        XiMap xi(f.profile, table);
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> dist(0.0, kTwoPi);
        for (int l : {1, 12}) {
            double t = s.t_b(l);  // tau_bar = 1, backward flow is the identity
            for (int trial = 0; trial < 10; ++trial) {
                Vec2 x{dist(rng), dist(rng)};
                Vec2 got = xi(x, t);
                Vec2 want = f.profile.flow(x, t, 0.0);
                CHECK(circle_dist(got.x, want.x) <= 1e-9);
                CHECK(circle_dist(got.y, want.y) <= 1e-9);
            }
        }
        CHECK_THROWS_AS(xi({0.0, 0.0}, s.t_c(3)), Error);
    }

    SUBCASE("xi is measure preserving") {
        XiMap xi(f.profile, table);
        std::mt19937_64 rng(29);
        std::uniform_real_distribution<double> dist(0.0, kTwoPi);
        double t = 0.5 * (s.t_a(9) + s.t_b(9));
        double eps = 1e-4;
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            Vec2 x{dist(rng), dist(rng)};
            auto at = [&](double dx, double dy) { return xi({x.x + dx, x.y + dy}, t); };
            Vec2 xp = at(eps, 0), xm = at(-eps, 0), yp = at(0, eps), ym = at(0, -eps);
            double a11 = wrap_pm_pi(xp.x - xm.x) / (2 * eps);
            double a12 = wrap_pm_pi(yp.x - ym.x) / (2 * eps);
            double a21 = wrap_pm_pi(xp.y - xm.y) / (2 * eps);
            double a22 = wrap_pm_pi(yp.y - ym.y) / (2 * eps);
            worst = std::max(worst, std::fabs(a11 * a22 - a12 * a21 - 1.0));
        }
        CHECK(worst <= 1e-4);
    }
}
