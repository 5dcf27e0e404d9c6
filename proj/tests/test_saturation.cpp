#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "tsteer/errors.hpp"
#include "tsteer/saturation.hpp"

using namespace tsteer;

namespace {

// Independent reachability oracle on a dense lattice window.
std::set<Mode> bfs_reachable(const std::vector<Mode>& seed, int rounds, int radius) {
    std::set<Mode> base;
    for (const Mode& m : seed) {
        base.insert(m);
        base.insert(-m);
    }
    std::vector<std::vector<char>> mark(2 * radius + 1, std::vector<char>(2 * radius + 1, 0));
    auto idx = [&](const Mode& m) { return std::pair<int, int>{m.a + radius, m.b + radius}; };
    auto in_window = [&](const Mode& m) { return std::abs(m.a) <= radius && std::abs(m.b) <= radius; };
    for (const Mode& m : base)
        if (in_window(m)) mark[idx(m).first][idx(m).second] = 1;
    for (int r = 0; r < rounds; ++r) {
        auto snapshot = mark;
        for (int a = -radius; a <= radius; ++a)
            for (int b = -radius; b <= radius; ++b) {
                if (!snapshot[a + radius][b + radius]) continue;
                Mode l1{a, b};
                for (const Mode& l2 : base) {
                    if (parallel(l1, l2)) continue;
                    Mode sum = l1 + l2;
                    if (in_window(sum) && !sum.is_zero()) mark[idx(sum).first][idx(sum).second] = 1;
                }
            }
    }
    std::set<Mode> out;
    for (int a = -radius; a <= radius; ++a)
        for (int b = -radius; b <= radius; ++b)
            if (mark[a + radius][b + radius]) out.insert({a, b});
    return out;
}

// Lattice-span oracle via column reduction of the span matrix.
bool smith_full_span(std::vector<Mode> v) {
    // reduce to a triangular basis of the generated subgroup
    for (;;) {
        std::sort(v.begin(), v.end(), [](const Mode& x, const Mode& y) {
            return std::abs(x.a) + std::abs(x.b) < std::abs(y.a) + std::abs(y.b);
        });
        v.erase(std::remove_if(v.begin(), v.end(), [](const Mode& m) { return m.is_zero(); }), v.end());
        if (v.size() < 2) return false;
        bool changed = false;
        for (std::size_t i = 0; i + 1 < v.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < v.size() && !changed; ++j) {
                // reduce v[j] by multiples of v[i] on the dominant coordinate
                Mode& p = v[i];
                Mode& q = v[j];
                if (p.a != 0 && std::abs(q.a) >= std::abs(p.a)) {
                    int k = q.a / p.a;
                    if (k != 0) {
                        q = {q.a - k * p.a, q.b - k * p.b};
                        changed = true;
                    }
                } else if (p.a == 0 && p.b != 0 && q.a == 0 && std::abs(q.b) >= std::abs(p.b)) {
                    int k = q.b / p.b;
                    if (k != 0) {
                        q = {0, q.b - k * p.b};
                        changed = true;
                    }
                }
            }
        if (!changed) break;
    }
    // determine the subgroup determinant from two independent survivors
    long long best = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            long long c = std::llabs(cross(v[i], v[j]));
            if (c != 0) best = best == 0 ? c : std::gcd(best, c);
        }
    return best == 1;
}

}  // namespace

TEST_CASE("generator characterization") {
    CHECK(is_generator(GeneratorSet::make({{1, 0}, {0, 1}})));
    CHECK_FALSE(is_generator(GeneratorSet::make({{2, 0}, {0, 2}})));
    CHECK(is_generator(GeneratorSet::make({{2, 1}, {1, 1}})));
    CHECK_FALSE(is_generator(GeneratorSet::make({{1, 1}})));
    CHECK_FALSE(is_generator(GeneratorSet::make({{1, 1}, {2, 2}})));

    SUBCASE("even lattice never reaches (1,0) by brute force") {
        // all integer combinations a*(2,0)+b*(0,2) with small coefficients
        for (int a = -6; a <= 6; ++a)
            for (int b = -6; b <= 6; ++b) {
                bool hits = (2 * a == 1) && (2 * b == 0);
                CHECK_FALSE(hits);
            }
    }

    SUBCASE("agreement with the reduction oracle on random sets") {
        std::mt19937_64 rng(41);
        std::uniform_int_distribution<int> d(-4, 4);
        for (int trial = 0; trial < 300; ++trial) {
            std::vector<Mode> m;
            for (int k = 0; k < 3; ++k) {
                Mode c{d(rng), d(rng)};
                if (!c.is_zero() && std::count(m.begin(), m.end(), c) == 0) m.push_back(c);
            }
            if (m.empty()) continue;
            GeneratorSet E = GeneratorSet::make(m);
            CHECK(is_generator(E) == smith_full_span(E.modes));
        }
    }
}

TEST_CASE("saturation sequence") {
    GeneratorSet E = GeneratorSet::make({{1, 0}, {0, 1}});
    auto seq = saturation_sequence(E, 6);

    CHECK(seq[0].size() == 4);
    CHECK(seq[1].size() == 8);
    CHECK(std::count(seq[1].begin(), seq[1].end(), Mode{1, 1}) == 1);
    CHECK(std::count(seq[1].begin(), seq[1].end(), Mode{-1, 1}) == 1);

    SUBCASE("monotone and symmetric") {
        for (std::size_t j = 1; j < seq.size(); ++j) {
            CHECK(std::includes(seq[j].begin(), seq[j].end(), seq[j - 1].begin(), seq[j - 1].end()));
            for (const Mode& m : seq[j]) CHECK(std::count(seq[j].begin(), seq[j].end(), -m) == 1);
        }
    }

    SUBCASE("agreement with the BFS oracle and actual coverage rate") {
        for (int j = 1; j <= 6; ++j) {
            auto oracle = bfs_reachable(E.modes, j, 14);
            std::set<Mode> got(seq[j].begin(), seq[j].end());
            // sequence and oracle agree inside the window
            for (const Mode& m : got)
                if (m.inf_norm() <= 14) CHECK(oracle.count(m) == 1);
            for (const Mode& m : oracle) CHECK(got.count(m) == 1);
            // sums against E_0 only: the ball radius reached by level j is (j+1)/2
            int r = (j + 1) / 2;
            for (int a = -r; a <= r; ++a)
                for (int b = -r; b <= r; ++b) {
                    Mode m{a, b};
                    if (m.is_zero()) continue;
                    CHECK(got.count(m) == 1);
                }
        }
        // axis doubling needs an intermediate knight move, so (2,0) enters at level 3
        std::set<Mode> e2(seq[2].begin(), seq[2].end());
        std::set<Mode> e3(seq[3].begin(), seq[3].end());
        CHECK(e2.count({2, 0}) == 0);
        CHECK(e3.count({2, 0}) == 1);
    }

    SUBCASE("even sublattice never reaches odd modes") {
        auto even = saturation_sequence(GeneratorSet::make({{2, 0}, {0, 2}}), 6);
        for (const auto& level : even)
            for (const Mode& m : level) {
                CHECK(m.a % 2 == 0);
                CHECK(m.b % 2 == 0);
            }
    }

    SUBCASE("budget guard") { CHECK_THROWS_AS(saturation_sequence(E, 11), Error); }
}

TEST_CASE("trig expansion") {
    CHECK_THROWS_AS(trig_expand({1, 1}, {2, 2}), Error);

    TrigExpansion e = trig_expand({1, 0}, {0, 1});
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(0.0, kTwoPi);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        Vec2 x{dist(rng), dist(rng)};
        Mode sum = e.l1 + e.l2;
        double s_direct = sin_mode(sum, x);
        double s_expand = e.sin_sc * sin_mode(e.l1, x) * cos_mode(e.l2, x) +
                          e.sin_cs * cos_mode(e.l1, x) * sin_mode(e.l2, x);
        double c_direct = cos_mode(sum, x);
        double c_expand = e.cos_cc * cos_mode(e.l1, x) * cos_mode(e.l2, x) +
                          e.cos_ss * sin_mode(e.l1, x) * sin_mode(e.l2, x);
        worst = std::max({worst, std::fabs(s_direct - s_expand), std::fabs(c_direct - c_expand)});
    }
    CHECK(worst <= 1e-14);

    // general non-parallel pair
    TrigExpansion e2 = trig_expand({2, -1}, {1, 3});
    for (int trial = 0; trial < 100; ++trial) {
        Vec2 x{dist(rng), dist(rng)};
        Mode sum = e2.l1 + e2.l2;
        double s = e2.sin_sc * sin_mode(e2.l1, x) * cos_mode(e2.l2, x) +
                   e2.sin_cs * cos_mode(e2.l1, x) * sin_mode(e2.l2, x);
        CHECK(std::fabs(s - sin_mode(sum, x)) <= 1e-14);
    }
}
