#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pierce/error.hpp"
#include "pierce/highdim.hpp"
#include "pierce/witness.hpp"

using namespace pierce;
constexpr double pi = std::numbers::pi;

TEST_CASE("j_of_d table") {
    CHECK(j_of_d(2) == 4);
    CHECK(j_of_d(3) == 5);
    CHECK(j_of_d(4) == 11);
    CHECK(j_of_d(5) == 13);
    CHECK(j_of_d(6) == 22);
    CHECK_THROWS_AS(j_of_d(1), PierceError);
    CHECK(dichotomy_interval_budget(2) == 3);
    CHECK(dichotomy_interval_budget(3) == 5);
}

TEST_CASE("curve_point") {
    PointD x = curve_point({CurveKind::Moment, 3}, 2.0);
    CHECK(x == PointD{2, 4, 8});
    x = curve_point({CurveKind::Caratheodory, 2}, pi / 2);
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(std::abs(x[1]) < 1e-15);
    x = curve_point({CurveKind::Caratheodory, 4}, 0.0);
    CHECK(x == PointD{0, 1, 0, 1});
    CHECK_THROWS_AS(curve_point({CurveKind::Caratheodory, 3}, 0.0), PierceError);
}

TEST_CASE("SturmSequence counts known roots") {
    // (t - 1)(t - 2)(t + 3) = t^3 - 7t + 6
    const SturmSequence s({6, -7, 0, 1});
    CHECK(s.degree() == 3);
    const long double inf = std::numeric_limits<long double>::infinity();
    CHECK(s.count_roots(-inf, inf) == 3);
    CHECK(s.count_roots(0, 10) == 2);
    CHECK(s.count_roots(1.5, 10) == 1);
    CHECK(SturmSequence({1, 0, 1}).count_roots(-inf, inf) == 0);
    // Double root counts once.
    CHECK(SturmSequence({1, -2, 1}).count_roots(-inf, inf) == 1);
    CHECK_THROWS_AS(SturmSequence({0, 0}), PierceError);
}

TEST_CASE("Sturm count matches roots from products of known factors") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-3, 3);
    const long double inf = std::numeric_limits<long double>::infinity();
    for (int trial = 0; trial < 300; ++trial) {
        const int real_roots = 1 + static_cast<int>(rng() % 4);
        std::vector<long double> p{1.0L};
        std::vector<double> roots;
        for (int k = 0; k < real_roots; ++k) {
            double r = u(rng);
            bool near = false;
            for (double q : roots) near = near || std::abs(q - r) < 0.05;
            if (near) continue;
            roots.push_back(r);
            std::vector<long double> next(p.size() + 1, 0.0L);
            for (std::size_t i = 0; i < p.size(); ++i) {
                next[i] -= r * p[i];
                next[i + 1] += p[i];
            }
            p = next;
        }
        if (rng() % 2 == 0) {
            // times (t^2 + 1): no extra real roots
            std::vector<long double> next(p.size() + 2, 0.0L);
            for (std::size_t i = 0; i < p.size(); ++i) {
                next[i] += p[i];
                next[i + 2] += p[i];
            }
            p = next;
        }
        CHECK(SturmSequence(p).count_roots(-inf, inf) == static_cast<int>(roots.size()));
    }
}

TEST_CASE("hyperplane_crossings") {
    const std::vector<double> x1{1, 0, 0};
    CrossingCount c = hyperplane_crossings({CurveKind::Moment, 3}, x1, 0.0, -2, 2, 4001);
    CHECK(c.sampled == 1);
    REQUIRE(c.exact);
    CHECK(*c.exact == 1);

    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    for (int k = 0; k < 100; ++k) {
        const std::vector<double> a{g(rng), g(rng), g(rng)};
        c = hyperplane_crossings({CurveKind::Moment, 3}, a, g(rng), -3, 3, 2000);
        CHECK(*c.exact <= 3);
        CHECK(c.sampled <= *c.exact);
    }
    for (int k = 0; k < 200; ++k) {
        const std::vector<double> a{g(rng), g(rng)};
        c = hyperplane_crossings({CurveKind::Caratheodory, 2}, a, g(rng), 0, kTwoPi, 2000);
        CHECK(c.sampled <= 2);
        CHECK_FALSE(c.exact);
    }
    const std::vector<double> zero{0, 0, 0};
    CHECK_THROWS_AS(hyperplane_crossings({CurveKind::Moment, 3}, zero, 0.0, -1, 1, 10), PierceError);
    const std::vector<double> wrong{1, 0};
    CHECK_THROWS_AS(hyperplane_crossings({CurveKind::Moment, 3}, wrong, 0.0, -1, 1, 10), PierceError);
}

TEST_CASE("spread_out_general") {
    std::vector<std::size_t> six{0, 10, 20, 30, 40, 50};
    CHECK(spread_out_general(six, 60, 0.1, 3));
    std::vector<std::size_t> five{0, 12, 24, 36, 48};
    CHECK_FALSE(spread_out_general(five, 60, 0.1, 3));
    // Linear order for odd d: 0 and 59 are far apart on a line.
    std::vector<std::size_t> ends{0, 11, 23, 35, 47, 59};
    CHECK(spread_out_general(ends, 60, 0.15, 3));
    CHECK_THROWS_AS(spread_out_general(six, 60, 0.0, 3), PierceError);
}

TEST_CASE("spread_out_general with d = 2 equals is_spread_out") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 3000; ++trial) {
        const std::size_t n = 4 + rng() % 27;
        std::vector<std::size_t> pos;
        for (std::size_t i = 0; i < n; ++i)
            if (rng() % 4 == 0) pos.push_back(i);
        const double alpha = 0.01 + 0.3 * static_cast<double>(rng() % 1000) / 1000.0;
        CHECK(spread_out_general(pos, n, alpha, 2) == is_spread_out(pos, n, alpha));
    }
}

TEST_CASE("alpha_scale") {
    CHECK(alpha_scale(2).validated);
    CHECK_FALSE(alpha_scale(3).validated);
    CHECK(alpha_scale(4).c_d == doctest::Approx(1.0 / 300));
}
