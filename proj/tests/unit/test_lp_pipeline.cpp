#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "pierce/error.hpp"
#include "pierce/generators.hpp"
#include "pierce/lp.hpp"
#include "pierce/meet_graph.hpp"
#include "pierce/pipeline.hpp"

using namespace pierce;

namespace {

ConvexBody square(int id, double x0, double y0, double side) {
    const std::vector<Point2> pts{{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}};
    return make_body(id, pts);
}

std::vector<ConvexBody> disjoint(int k) {
    std::vector<ConvexBody> out;
    for (int i = 0; i < k; ++i) {
        out.push_back(square(i, 2.0 * i, 0, 1));
    }
    return out;
}

}  // namespace

TEST_CASE("lp_solve small problems") {
    LPProblem p{Direction::Maximize, {1.0}, {{1.0}}, {Sense::LessEqual}, {3.0}};
    LPSolution s = lp_solve(p);
    CHECK(s.status == LPStatus::Optimal);
    CHECK(s.objective == doctest::Approx(3.0));

    p = {Direction::Minimize, {0.0}, {{1.0}}, {Sense::LessEqual}, {-1.0}};
    CHECK(lp_solve(p).status == LPStatus::Infeasible);

    p = {Direction::Maximize, {1.0, 1.0}, {{1.0, -1.0}}, {Sense::LessEqual}, {1.0}};
    CHECK(lp_solve(p).status == LPStatus::Unbounded);

    // min x + 2y, x + y >= 2, x - y = 0  ->  x = y = 1, objective 3
    p = {Direction::Minimize, {1.0, 2.0}, {{1.0, 1.0}, {1.0, -1.0}}, {Sense::GreaterEqual, Sense::Equal}, {2.0, 0.0}};
    s = lp_solve(p);
    CHECK(s.status == LPStatus::Optimal);
    CHECK(s.objective == doctest::Approx(3.0));
    CHECK(s.values[0] == doctest::Approx(1.0));

    p = {Direction::Minimize, {1.0, 2.0}, {{1.0}}, {Sense::LessEqual}, {1.0}};
    CHECK_THROWS_AS(lp_solve(p), PierceError);
}

TEST_CASE("lp_solve weak duality on random covering LPs") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    std::bernoulli_distribution coin(0.4);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 3 + rng() % 8;
        const std::size_t n = 3 + rng() % 8;
        std::vector<std::vector<double>> a(m, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < m; ++i) {
            a[i][rng() % n] = 1.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (coin(rng)) a[i][j] = u(rng);
            }
        }
        std::vector<double> c(n), b(m);
        for (auto& v : c) v = u(rng);
        for (auto& v : b) v = u(rng);
        const LPSolution primal = lp_solve({Direction::Minimize, c, a, std::vector<Sense>(m, Sense::GreaterEqual), b});
        std::vector<std::vector<double>> at(n, std::vector<double>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) at[j][i] = a[i][j];
        const LPSolution dual = lp_solve({Direction::Maximize, b, at, std::vector<Sense>(n, Sense::LessEqual), c});
        REQUIRE(primal.status == LPStatus::Optimal);
        REQUIRE(dual.status == LPStatus::Optimal);
        CHECK(primal.objective == doctest::Approx(dual.objective).epsilon(1e-7));
        CHECK(primal.max_violation <= 1e-7);
        CHECK(dual.max_violation <= 1e-7);
    }
}

TEST_CASE("transversal and packing of simple families") {
    const std::vector<Point2> tri{{0, 0}, {1, 0}, {0, 1}};
    const std::vector<ConvexBody> one{make_body(0, tri)};
    auto cands = candidate_points(one);
    CHECK(fractional_transversal(one, cands).size == doctest::Approx(1.0));
    CHECK(fractional_packing(one, cands).size == doctest::Approx(1.0));
    for (int k = 2; k <= 5; ++k) {
        const auto bodies = disjoint(k);
        cands = candidate_points(bodies);
        CHECK(fractional_transversal(bodies, cands).size == doctest::Approx(k));
        CHECK(fractional_packing(bodies, cands).size == doctest::Approx(k));
        CHECK(greedy_transversal(bodies, cands).size() == static_cast<std::size_t>(k));
    }
    const std::vector<Point2> far{{10, 10}};
    CHECK_THROWS_AS(fractional_transversal(one, far), PierceError);
}

TEST_CASE("gallery LP values") {
    const Instance g = gallery7();
    const auto cands = candidate_points(g.bodies);
    const auto ft = fractional_transversal(g.bodies, cands);
    const auto fp = fractional_packing(g.bodies, cands);
    CHECK(std::abs(ft.size - fp.size) <= 1e-6);
    // With no point in five triangles and three in four, 7 / tau* <= 4 forces tau* >= 7/4.
    CHECK(ft.size >= 1.75 - 1e-9);
    CHECK(ft.size <= 3.0);
    const auto greedy = greedy_transversal(g.bodies, cands);
    CHECK(greedy.size() >= 3);
    for (const auto& b : g.bodies) {
        CHECK(std::any_of(greedy.begin(), greedy.end(), [&](Point2 x) { return body_contains(b, x); }));
    }
    const auto cloud = cloud_expand(ft, 1000);
    for (const auto& b : g.bodies) {
        std::size_t in = 0;
        for (Point2 c : cloud) in += body_contains(b, c, kTolGeom + 2 * kCloudEps) ? 1 : 0;
        CHECK(static_cast<double>(in) / cloud.size() >= 1.0 / ft.size - 1e-3);
    }
}

TEST_CASE("rationalize") {
    RationalWeights r = rationalize(std::vector<double>{0.5, 0.5}, 1000);
    CHECK(r.m == std::vector<std::int64_t>{1, 1});
    CHECK(r.denominator == 2);
    r = rationalize(std::vector<double>{1.0 / 3, 2.0 / 3}, 100);
    CHECK(r.m == std::vector<std::int64_t>{1, 2});
    CHECK(r.denominator == 3);
    r = rationalize(std::vector<double>{0.0, 1.0}, 10);
    CHECK(r.m == std::vector<std::int64_t>{0, 1});
    CHECK(r.denominator == 1);
    r = rationalize(std::vector<double>{0.123456789, 0.31415926}, 50);
    CHECK(r.denominator <= 50);
    CHECK_THROWS_AS(rationalize(std::vector<double>{0.5}, 0), PierceError);
    CHECK_THROWS_AS(rationalize(std::vector<double>{-0.5}, 10), PierceError);
}

TEST_CASE("rationalized packing satisfies the integer load bound") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Instance inst = seed % 2 == 0 ? gen_pairwise(12, seed) : gen_clustered(3, 12, seed);
        const auto cands = candidate_points(inst.bodies);
        const auto members = membership(inst.bodies, cands);
        const auto fp = fractional_packing(inst.bodies, cands);
        RationalWeights rw = rationalize(fp.weights, 10000);
        enforce_packing(rw, members);
        CHECK(packing_holds(rw, members));
        for (const auto& set : members) {
            std::int64_t load = 0;
            for (int b : set) load += rw.m[static_cast<std::size_t>(b)];
            CHECK(load <= rw.denominator);
        }
    }
}

TEST_CASE("enforce_packing repairs an overloaded point") {
    RationalWeights rw{{2, 2, 1}, 3};
    const std::vector<std::vector<int>> members{{0, 1}, {1, 2}};
    CHECK_FALSE(packing_holds(rw, members));
    CHECK(enforce_packing(rw, members) >= 1);
    CHECK(packing_holds(rw, members));
}

TEST_CASE("replicate") {
    const auto bodies = disjoint(3);
    Multiset ms = replicate(bodies, std::vector<std::int64_t>{1, 1, 1});
    REQUIRE(ms.bodies.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(ms.bodies[static_cast<std::size_t>(i)].vertices == bodies[static_cast<std::size_t>(i)].vertices);
        CHECK(ms.source[static_cast<std::size_t>(i)] == i);
    }
    ms = replicate(std::span(bodies).first(2), std::vector<std::int64_t>{2, 0});
    REQUIRE(ms.bodies.size() == 2);
    CHECK(ms.source == std::vector<int>{0, 0});
    CHECK(ms.bodies[1].id == 1);
    CHECK_THROWS_AS(replicate(bodies, std::vector<std::int64_t>{0, 0, 0}), PierceError);
    CHECK_THROWS_AS(replicate(bodies, std::vector<std::int64_t>{1, 1}), PierceError);

    const Instance inst = gen_clustered(4, 12, 5);
    ms = replicate(inst.bodies, std::vector<std::int64_t>(12, 3));
    CHECK(verify_p2(build_meet_graph(ms.bodies, inst.curve), 4));
}

TEST_CASE("cloud_expand") {
    FractionalTransversal ft{{{0.2, 0.3}}, {1.0}, 1.0};
    auto cloud = cloud_expand(ft, 10);
    CHECK(cloud.size() == 10);
    for (Point2 c : cloud) CHECK(norm(c - Point2{0.2, 0.3}) <= 2 * kCloudEps);
    ft = {{{0, 0}, {1, 1}}, {0.5, 0.5}, 1.0};
    cloud = cloud_expand(ft, 4);
    CHECK(cloud.size() == 4);
    CHECK(std::count_if(cloud.begin(), cloud.end(), [](Point2 c) { return norm(c) < 1e-3; }) == 2);
}

TEST_CASE("default_alpha") {
    CHECK(default_alpha(1.0) == 0.027);
    CHECK(default_alpha(0.6) == doctest::Approx(0.002));
}

TEST_CASE("run_pipeline on the gallery") {
    const Instance g = gallery7();
    const TransversalReport r = run_pipeline(g.bodies, g.curve, 2);
    CHECK(r.flags.all());
    CHECK(r.flags.p2);
    CHECK(r.transversal.size() == 3);
    CHECK(r.witnesses > 0);
    CHECK(r.stages.size() == 7);
}

TEST_CASE("run_pipeline on a clustered instance") {
    const Instance inst = gen_clustered(4, 60, 7);
    const TransversalReport r = run_pipeline(inst.bodies, inst.curve, 4);
    CHECK(r.flags.all());
    CHECK(static_cast<double>(r.transversal.size()) <= r.tau_star * (1.0 + std::log(60.0)) + 1e-9);
}

TEST_CASE("run_pipeline on a single body and error paths") {
    const std::vector<Point2> tri{{0, 0}, {1, 0}, {0, 1}};
    const std::vector<ConvexBody> one{make_body(0, tri)};
    const TransversalReport r = run_pipeline(one, CurveModel::unit_circle(), 2);
    CHECK(r.transversal.size() == 1);
    CHECK(r.tau_star == doctest::Approx(1.0));

    const std::vector<ConvexBody> none;
    CHECK_THROWS_AS(run_pipeline(none, CurveModel::unit_circle(), 2), PierceError);
    CHECK_THROWS_AS(run_pipeline(one, CurveModel::unit_circle(), 1), PierceError);

    const auto far = disjoint(3);
    try {
        run_pipeline(far, CurveModel{{0.5, 0.5}, 3.0}, 3);
        FAIL("expected the (p,2) condition to fail");
    } catch (const PierceError& e) {
        CHECK(e.kind() == ErrorKind::ConditionNotSatisfied);
        CHECK(e.stage() == "precondition");
    }
}

TEST_CASE("run_pipeline filters bodies that miss the curve") {
    Instance inst = gen_clustered(3, 6, 2);
    const std::vector<Point2> inner{{-0.1, -0.1}, {0.1, -0.1}, {0.0, 0.1}};
    inst.bodies.push_back(make_body(6, inner));
    const TransversalReport r = run_pipeline(inst.bodies, inst.curve, 4);
    CHECK(r.filtered == std::vector<int>{6});
    CHECK(r.p_effective == 3);
    CHECK(r.flags.all_hit);
}
