#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "pierce/cli.hpp"
#include "pierce/error.hpp"
#include "pierce/generators.hpp"
#include "pierce/meet_graph.hpp"
#include "pierce/svg.hpp"
#include "pierce/verify.hpp"

using namespace pierce;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "pierce_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

int run(const std::vector<std::string>& args, std::string* out_text = nullptr) {
    std::ostringstream out;
    std::ostringstream err;
    const int rc = cli_run(args, out, err);
    if (out_text != nullptr) {
        *out_text = out.str();
    }
    return rc;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool complete(const ColorGraph& g) {
    const auto n = static_cast<std::size_t>(g.size());
    return g.edge_count() == n * (n - 1) / 2;
}

}  // namespace

TEST_CASE("gen_pairwise") {
    CHECK(complete(build_meet_graph(gen_pairwise(2, 1).bodies, CurveModel::unit_circle())));
    const Instance inst = gen_pairwise(50, 1);
    CHECK(inst.bodies.size() == 50);
    CHECK(complete(build_meet_graph(inst.bodies, inst.curve)));
    CHECK_THROWS_AS(gen_pairwise(1, 1), PierceError);
    const Instance again = gen_pairwise(50, 1);
    CHECK(instance_to_json(inst) == instance_to_json(again));
    CHECK(instance_to_json(inst) != instance_to_json(gen_pairwise(50, 2)));
}

TEST_CASE("gen_clustered") {
    const Instance one = gen_clustered(2, 12, 3);
    const ColorGraph g1 = build_meet_graph(one.bodies, one.curve);
    CHECK(complete(g1));
    // A single cluster shares one curve point: all witnesses lie in a short arc.
    const WitnessList q = build_witness_list(one.bodies, one.curve);
    double lo = 10, hi = -10;
    for (const auto& w : q.entries()) {
        double a = normalize_angle(w.angle - q[0].angle + 1.0);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    CHECK(hi - lo < 0.2);

    const Instance inst = gen_clustered(4, 60, 7);
    const ColorGraph g = build_meet_graph(inst.bodies, inst.curve);
    CHECK(verify_p2(g, 4));
    const P2Result r = check_p2(g, 4);
    CHECK(r.independence_number == 3);
    CHECK_FALSE(g.has_edge(0, 1));
    CHECK_FALSE(g.has_edge(1, 2));
    CHECK_FALSE(g.has_edge(0, 2));

    CHECK_THROWS_AS(gen_clustered(3, 2, 1), PierceError);
    CHECK_THROWS_AS(gen_clustered(1, 5, 1), PierceError);
}

TEST_CASE("gallery7") {
    const Instance g = gallery7();
    CHECK(g.bodies.size() == 7);
    CHECK(g.p == 2);
    CHECK(complete(build_meet_graph(g.bodies, g.curve)));
    CHECK(oracle::positive_area_subsets(g.bodies, 4).size() == 3);
    CHECK(oracle::positive_area_subsets(g.bodies, 5).empty());
    CHECK_THROWS_AS(gallery7(-0.1), PierceError);
}

TEST_CASE("instance round trip is bit-identical") {
    const Instance inst = gen_pairwise(20, 5);
    const fs::path path = scratch("rt_instance.json");
    write_instance(path, inst);
    const Instance back = read_instance(path);
    REQUIRE(back.bodies.size() == inst.bodies.size());
    for (std::size_t i = 0; i < inst.bodies.size(); ++i) {
        REQUIRE(back.bodies[i].vertices.size() == inst.bodies[i].vertices.size());
        for (std::size_t k = 0; k < inst.bodies[i].vertices.size(); ++k) {
            CHECK(same_bits(back.bodies[i].vertices[k].x, inst.bodies[i].vertices[k].x));
            CHECK(same_bits(back.bodies[i].vertices[k].y, inst.bodies[i].vertices[k].y));
        }
    }
    CHECK(back.meta == inst.meta);
    CHECK(back.p == inst.p);
}

TEST_CASE("report round trip is bit-identical") {
    const Instance g = gallery7();
    const TransversalReport rep = run_pipeline(g.bodies, g.curve, 2);
    const fs::path path = scratch("rt_report.json");
    write_report(path, rep);
    const TransversalReport back = read_report(path);
    CHECK(same_bits(back.tau_star, rep.tau_star));
    CHECK(same_bits(back.packing_size, rep.packing_size));
    CHECK(same_bits(back.z.x, rep.z.x));
    CHECK(same_bits(back.epsilon, rep.epsilon));
    CHECK(back.m == rep.m);
    CHECK(back.denominator == rep.denominator);
    CHECK(back.coverage == rep.coverage);
    REQUIRE(back.transversal.size() == rep.transversal.size());
    for (std::size_t i = 0; i < rep.transversal.size(); ++i) {
        CHECK(same_bits(back.transversal[i].x, rep.transversal[i].x));
        CHECK(same_bits(back.transversal[i].y, rep.transversal[i].y));
    }
    REQUIRE(back.stages.size() == rep.stages.size());
    CHECK(same_bits(back.stages[2].seconds, rep.stages[2].seconds));
    CHECK(report_to_json(back) == report_to_json(rep));
}

TEST_CASE("malformed documents raise Io errors") {
    const fs::path path = scratch("bad.json");
    std::ofstream(path) << "{\"curve\": 3";
    try {
        read_instance(path);
        FAIL("expected an error");
    } catch (const PierceError& e) {
        CHECK(e.kind() == ErrorKind::Io);
    }
    CHECK_THROWS_AS(read_instance(scratch("does_not_exist.json")), PierceError);
    nlohmann::json j = instance_to_json(gallery7());
    j["p"] = 1;
    CHECK_THROWS_AS(instance_from_json(j), PierceError);
    j = instance_to_json(gallery7());
    j["bodies"] = nlohmann::json::array();
    CHECK_THROWS_AS(instance_from_json(j), PierceError);
}

TEST_CASE("validate_run_config") {
    RunConfig c;
    validate_run_config(c);
    c.trials = 0;
    CHECK_THROWS_AS(validate_run_config(c), PierceError);
    c = {};
    c.tol_geom = 0.0;
    CHECK_THROWS_AS(validate_run_config(c), PierceError);
}

TEST_CASE("render_svg counts") {
    const Instance g = gallery7();
    const std::vector<Point2> t{{0, 0}, {0.1, 0.2}, {0.3, -0.1}};
    const std::string svg = render_svg(g, t);
    std::size_t paths = 0;
    for (std::size_t p = svg.find("<path"); p != std::string::npos; p = svg.find("<path", p + 1)) ++paths;
    std::size_t marks = 0;
    for (std::size_t p = svg.find("class=\"transversal\""); p != std::string::npos;
         p = svg.find("class=\"transversal\"", p + 1))
        ++marks;
    CHECK(paths == 7);
    CHECK(marks == 3);
}

TEST_CASE("verify_report catches tampering") {
    const Instance g = gallery7();
    TransversalReport rep = run_pipeline(g.bodies, g.curve, 2);
    for (const auto& line : verify_report(g, rep)) CHECK(line.ok);
    TransversalReport bad = rep;
    bad.transversal.pop_back();
    bool all = true;
    for (const auto& line : verify_report(g, bad)) all = all && line.ok;
    CHECK_FALSE(all);
    bad = rep;
    bad.m[0] += bad.denominator;
    all = true;
    for (const auto& line : verify_report(g, bad)) all = all && line.ok;
    CHECK_FALSE(all);
}

TEST_CASE("cli gen, oracle, solve, verify, plot, stats") {
    const std::string gpath = scratch("g.json").string();
    const std::string rpath = scratch("r.json").string();
    const std::string spath = scratch("g.svg").string();
    std::string text;
    CHECK(run({"gen", "gallery", "-o", gpath}) == 0);
    CHECK(run({"oracle", gpath}, &text) == 0);
    CHECK(text == "3\n");
    CHECK(run({"oracle", gpath, "--kmax", "2"}, &text) == 1);
    CHECK(text == "none\n");
    CHECK(run({"solve", gpath, "-o", rpath}) == 0);
    CHECK(run({"verify", gpath, rpath}) == 0);
    CHECK(run({"plot", gpath, rpath, "-o", spath}) == 0);
    CHECK(fs::file_size(spath) > 100);
    CHECK(run({"stats", gpath}, &text) == 0);
    CHECK(text.find("witnesses 21") != std::string::npos);
    CHECK(run({"gen", "clustered", "--p", "3", "--n", "9", "--seed", "4"}, &text) == 0);
    CHECK(instance_from_json(nlohmann::json::parse(text)).bodies.size() == 9);
}

TEST_CASE("cli exit codes") {
    CHECK(run({"solve", scratch("missing.json").string()}) == 2);
    CHECK(run({"frobnicate"}) == 2);
    CHECK(run({}) == 2);
    CHECK(run({"gen", "nonsense"}) == 2);
    CHECK(run({"gen", "pairwise", "--n", "1"}) == 2);
    CHECK(run({"solve", "--bogus"}) == 2);
    CHECK(run({"--help"}) == 0);

    // A report that no longer matches its instance fails verification.
    const std::string gpath = scratch("g2.json").string();
    const std::string rpath = scratch("r2.json").string();
    CHECK(run({"gen", "gallery", "-o", gpath}) == 0);
    CHECK(run({"solve", gpath, "-o", rpath}) == 0);
    TransversalReport rep = read_report(rpath);
    rep.transversal.resize(1);
    write_report(rpath, rep);
    CHECK(run({"verify", gpath, rpath}) == 1);
}

TEST_CASE("cli batch solve") {
    const fs::path dir = scratch("batch");
    fs::remove_all(dir);
    fs::create_directories(dir / "in");
    for (int s = 1; s <= 4; ++s) {
        write_instance(dir / "in" / ("p" + std::to_string(s) + ".json"), gen_pairwise(10, s));
    }
    std::string text;
    CHECK(run({"solve", "--glob", (dir / "in" / "*.json").string(), "--outdir", (dir / "out").string()}, &text) == 0);
    for (int s = 1; s <= 4; ++s) {
        const fs::path out = dir / "out" / ("p" + std::to_string(s) + ".json");
        REQUIRE(fs::exists(out));
        const TransversalReport rep = read_report(out);
        const Instance inst = read_instance(dir / "in" / ("p" + std::to_string(s) + ".json"));
        const TransversalReport serial = run_pipeline(inst.bodies, inst.curve, inst.p);
        CHECK(rep.transversal.size() == serial.transversal.size());
        CHECK(rep.tau_star == serial.tau_star);
    }
    CHECK(run({"solve", "--glob", (dir / "nothing*.json").string(), "--outdir", (dir / "o2").string()}) == 2);
}
