#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "tsteer/control.hpp"
#include "tsteer/errors.hpp"
#include "tsteer/spectral.hpp"
#include "tsteer/transport.hpp"

using namespace tsteer;

namespace {

const ControlSetup& shared_setup() {
    static ControlSetup setup(build_covering(0.5, 4.7, 0.5, 4.7, 36, 0.1), GridSpec::make(64),
                              GeneratorSet::make({{1, 0}, {0, 1}}));
    return setup;
}

const ControlSetup& silent_setup() {
    static ControlSetup setup(build_covering(0.5, 4.7, 0.5, 4.7, 36, 0.1), GridSpec::make(64),
                              GeneratorSet::make({{1, 0}, {0, 1}}), 64, FlowTableOptions{}, 0.0);
    return setup;
}

ControlSolution solved_low_mode(const ControlSetup& setup, int M_t) {
    static std::map<std::pair<const ControlSetup*, int>, ControlSolution> cache;
    auto key = std::make_pair(&setup, M_t);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    ControlToStateMap A(setup, M_t);
    auto v1 = ScalarField::sample(setup.grid(), [](double x1, double x2) { return std::cos(x1) + std::sin(x2); });
    ControlSolution z = solve_global_control(v1, 0.05, A);
    cache.emplace(key, z);
    return z;
}

}  // namespace

TEST_CASE("control-to-state assembly") {
    const ControlSetup& setup = shared_setup();
    const FlowSchedule& s = setup.schedule();

    SUBCASE("zero coefficients give the zero field") {
        ControlToStateMap A(setup, 8);
        ScalarField out = A.apply(ControlSolution::zeros(setup, 8));
        CHECK(sobolev_norm(out, 0) == 0.0);
    }

    SUBCASE("silent drift reduces columns to pure quadrature") {
        ControlToStateMap A(silent_setup(), 1);
        GridSpec g = silent_setup().grid();
        for (int c = 0; c < 4; ++c) {
            Mode m = silent_setup().channel_mode(c);
            bool is_sin = silent_setup().channel_is_sin(c);
            auto want = ScalarField::sample(g, [&](double x1, double x2) {
                double trig = is_sin ? sin_mode(m, {x1, x2}) : cos_mode(m, {x1, x2});
                return s.T_star * trig;
            });
            ScalarField col = ScalarField::from_values(g, A.column(A.column_index(c, 0)));
            CHECK(sobolev_norm(col - want, 0) <= 1e-12 * sobolev_norm(want, 0));
        }
    }

    SUBCASE("matrix application is linear") {
        ControlToStateMap A(setup, 4);
        std::mt19937_64 rng(8);
        std::normal_distribution<double> dist;
        ControlSolution z1 = ControlSolution::zeros(setup, 4), z2 = z1, mix = z1;
        double al = 0.7, be = -1.3;
        for (int c = 0; c < z1.channels(); ++c)
            for (int b = 0; b < 4; ++b) {
                z1.zeta[c][b] = dist(rng);
                z2.zeta[c][b] = dist(rng);
                mix.zeta[c][b] = al * z1.zeta[c][b] + be * z2.zeta[c][b];
            }
        ScalarField want = al * A.apply(z1) + be * A.apply(z2);
        CHECK(sobolev_norm(A.apply(mix) - want, 0) <= 1e-10 * std::max(1.0, sobolev_norm(want, 0)));
    }

    SUBCASE("fast columns agree with the transport reference") {
        ControlToStateMap A(setup, 8);
        for (auto [c, b] : {std::pair{0, 0}, std::pair{3, 5}}) {
            ScalarField ref = A.reference_column(c, b, 2);
            ScalarField fast = ScalarField::from_values(setup.grid(), A.column(A.column_index(c, b)));
            double scale = std::max(sobolev_norm(ref, 0), 1e-300);
            CHECK(sobolev_norm(fast - ref, 0) <= 2e-5 * scale);
        }
    }

    SUBCASE("budget guard") { CHECK_THROWS_AS(ControlToStateMap(setup, 2000), Error); }
}

TEST_CASE("global control solve") {
    const ControlSetup& setup = shared_setup();
    GridSpec g = setup.grid();

    SUBCASE("zero target gives zero coefficients") {
        ControlToStateMap A(setup, 4);
        ControlSolution z = solve_global_control(ScalarField::zero(g), 0.1, A);
        for (const auto& ch : z.zeta)
            for (double v : ch) CHECK(v == 0.0);
    }

    SUBCASE("generator mode under silent drift inverts by quadrature") {
        ControlToStateMap A(silent_setup(), 8);
        auto v1 = ScalarField::sample(g, [](double x1, double) { return std::sin(x1); });
        ControlSolution z = solve_global_control(v1, 1e-8, A);
        CHECK(z.residual <= 1e-8 * sobolev_norm(v1, 0));
        // the sine channel of mode (1,0) integrates to 1 over [T_b, 1]
        double mass = 0.0;
        for (double v : z.zeta[0]) mass += v * z.bin_width();
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
        // off channels stay negligible
        for (int c = 1; c < z.channels(); ++c)
            for (double v : z.zeta[c]) CHECK(std::fabs(v) * z.T_star <= 1e-6);
    }

    SUBCASE("first-generation target is reachable") {
        ControlToStateMap A(setup, 64);
        auto v1 = ScalarField::sample(g, [](double x1, double x2) { return std::sin(x1 + x2); });
        ControlSolution z = solve_global_control(v1, 0.1, A);
        CHECK(z.residual <= 0.1 * sobolev_norm(v1, 0));
    }

    SUBCASE("coefficients scale linearly with the target") {
        ControlToStateMap A(setup, 16);
        auto v1 = ScalarField::sample(g, [](double x1, double x2) { return std::cos(x1) + std::sin(x2); });
        ControlSolution za = solve_global_control(v1, 0.05, A);
        ControlSolution zb = solve_global_control(2.0 * v1, 0.05, A);
        double worst = 0.0;
        for (int c = 0; c < za.channels(); ++c)
            for (int b = 0; b < za.M_t; ++b)
                worst = std::max(worst, std::fabs(zb.zeta[c][b] - 2.0 * za.zeta[c][b]));
        CHECK(worst <= 1e-8 * (1.0 + std::fabs(za.zeta[0][0])));
    }

    SUBCASE("non-mean-free targets are rejected") {
        ControlToStateMap A(setup, 4);
        auto bad = ScalarField::sample(g, [](double x1, double) { return 1.0 + std::cos(x1); });
        CHECK_THROWS_AS(solve_global_control(bad, 0.1, A), Error);
    }
}

TEST_CASE("eta evaluators") {
    const ControlSetup& setup = shared_setup();
    GridSpec g = setup.grid();
    const FlowSchedule& s = setup.schedule();
    ControlSolution z = solved_low_mode(setup, 16);
    EtaEvaluator eta(setup, z);

    SUBCASE("vanishes outside windows and outside the cutoff support") {
        CHECK(eta.hat_point({2.0, 2.0}, s.t_c(4)) == 0.0);
        CHECK(eta.tilde_point({2.0, 2.0}, 0.5 * s.T_a) == 0.0);
        double t = 0.5 * (s.t_a(3) + s.t_b(3));
        CHECK(eta.hat_point({0.1, 0.1}, t) == 0.0);
    }

    SUBCASE("support contained in the reference square, hence the rectangle") {
        const CoveringSpec& cov = setup.covering();
        std::vector<double> vals;
        for (int l : {1, 20}) {
            eta.hat_grid(0.5 * (s.t_a(l) + s.t_b(l)), vals);
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j) {
                    Vec2 x{g.node(i), g.node(j)};
                    double r1 = wrap_2pi(x.x - cov.p_K.x), r2 = wrap_2pi(x.y - cov.p_K.y);
                    bool in_ref = r1 < cov.l_K && r2 < cov.l_K;
                    if (!in_ref) {
                        CHECK(vals[static_cast<std::size_t>(i) * g.n + j] == 0.0);
                        CHECK(cov.in_rectangle(x, 0.0) == cov.in_rectangle(x, 0.0));
                    }
                }
        }
    }

    SUBCASE("zero coefficients give the zero force") {
        EtaEvaluator zero_eta(setup, ControlSolution::zeros(setup, 16));
        std::vector<double> vals;
        zero_eta.tilde_grid(0.5 * (s.t_a(7) + s.t_b(7)), vals);
        for (double v : vals) CHECK(v == 0.0);
    }

    SUBCASE("grid force is average-free at sampled times") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> tdist(0.0, 1.0);
        std::vector<double> vals;
        double cell = g.spacing() * g.spacing();
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            eta.tilde_grid(tdist(rng), vals);
            worst = std::max(worst, std::fabs(static_cast<double>(pairwise_sum(vals)) * cell));
        }
        CHECK(worst <= 1e-12);
    }

    SUBCASE("first window correction is a single bump term") {
        double t = 0.5 * (s.t_a(1) + s.t_b(1));
        std::vector<double> hat, tilde;
        eta.hat_grid(t, hat);
        eta.tilde_grid(t, tilde);
        double m = static_cast<double>(pairwise_sum(hat)) * g.spacing() * g.spacing();
        const auto& member = setup.cutoffs().chi_tilde_member_grid(1).values();
        double worst = 0.0;
        for (std::size_t i = 0; i < hat.size(); ++i)
            worst = std::max(worst, std::fabs(tilde[i] - (hat[i] - m * member[i])));
        CHECK(worst <= 1e-12 * (1.0 + std::fabs(m)));
    }

    SUBCASE("pointwise and grid paths agree") {
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> dist(0.0, kTwoPi);
        std::vector<double> vals;
        double t = 0.5 * (s.t_a(9) + s.t_b(9));
        eta.tilde_grid(t, vals);
        double scale = 0.0;
        for (double v : vals) scale = std::max(scale, std::fabs(v));
        double worst = 0.0;
        for (int i = 0; i < g.n; i += 7)
            for (int j = 0; j < g.n; j += 7) {
                double p = eta.tilde_point({g.node(i), g.node(j)}, t);
                worst = std::max(worst, std::fabs(p - vals[static_cast<std::size_t>(i) * g.n + j]));
            }
        CHECK(worst <= 1e-4 * scale);
    }

    SUBCASE("average corrections cancel along the characteristics") {
        // integral over [0,1] of (eta_tilde - eta_hat)(Y(x,0,s), s) at random x
        const ReturnProfile& profile = setup.profile();
        std::vector<double> offsets;  // integration panels inside a window
        for (double e : setup.table().piece_edges()) offsets.push_back(e - s.T_b);
        for (int b = 0; b <= z.M_t; ++b) offsets.push_back(b * z.bin_width());  // zeta jumps
        std::sort(offsets.begin(), offsets.end());
        offsets = merge_breakpoints(0.0, s.T_star, offsets, 1e-15);
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> dist(0.0, kTwoPi);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            Vec2 x{dist(rng), dist(rng)};
            double acc = 0.0;
            for (int l = 1; l <= s.K; ++l) {
                Vec2 y = profile.flow(x, 0.0, 0.5 * (s.t_a(l) + s.t_b(l)));
                for (std::size_t p = 0; p + 1 < offsets.size(); ++p) {
                    double a = s.t_a(l) + offsets[p], b = s.t_a(l) + offsets[p + 1];
                    acc += gauss_panel([&](double u) { return eta.correction_point(y, u); }, a, b, 3);
                }
            }
            worst = std::max(worst, std::fabs(acc));
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("localized control series") {
    const ControlSetup& setup = shared_setup();
    const FlowSchedule& s = setup.schedule();
    ControlSolution z = solved_low_mode(setup, 16);
    EtaEvaluator eta(setup, z);

    SUBCASE("sigma guard") { CHECK_THROWS_AS(LocalizedControlSeries(eta, 0.5, 1.0), Error); }

    double sigma = 4.0, T_ctrl = 1.0;
    LocalizedControlSeries series(eta, sigma, T_ctrl);

    SUBCASE("vanishes before the burst") {
        for (int l = 1; l <= series.mode_channels() + 3; ++l) {
            CHECK(series.gamma(l, 0.3) == 0.0);
            CHECK(series.gamma(l, series.T_sigma() - 1e-9) == 0.0);
        }
    }

    SUBCASE("mode channels vanish outside windows") {
        double t_ref = s.t_c(5);  // between windows
        double t = series.T_sigma() + t_ref / sigma;
        for (int l = 1; l <= series.mode_channels(); ++l) CHECK(series.gamma(l, t) == 0.0);
    }

    SUBCASE("case split ties the last two correction channels") {
        int N = series.mode_channels();
        for (int w : {5, 6, 12, 17}) {
            double t_ref = 0.5 * (s.t_a(w) + s.t_b(w));
            double total = 0.0;
            for (int j = 1; j <= w; ++j) total += eta.mean_hat(t_ref - 3.0 * (j - 1) * s.T_star);
            CHECK(series.gamma_tilde(N + 3, t_ref) ==
                  doctest::Approx(-series.gamma_tilde(N + 2, t_ref) - total).epsilon(1e-12));
        }
    }

    SUBCASE("series reconstructs the scaled control force") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> xdist(0.0, kTwoPi);
        std::uniform_real_distribution<double> tdist(series.T_sigma(), T_ctrl);
        double worst = 0.0, scale = 1.0;
        for (int trial = 0; trial < 300; ++trial) {
            Vec2 x{xdist(rng), xdist(rng)};
            double t = tdist(rng);
            double direct = sigma * eta.tilde_point(x, sigma * (t - series.T_sigma()));
            double rec = series.reconstruct(x, t);
            scale = std::max(scale, std::fabs(direct));
            worst = std::max(worst, std::fabs(rec - direct));
        }
        CHECK(worst <= 1e-10 * scale);
    }
}
