#include "pierce/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "pierce/error.hpp"

namespace pierce {

using nlohmann::json;

namespace {

json point_json(Point2 p) { return json::array({p.x, p.y}); }

Point2 point_from(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw PierceError(ErrorKind::Io, "expected a point [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json points_json(const std::vector<Point2>& pts) {
    json out = json::array();
    for (Point2 p : pts) {
        out.push_back(point_json(p));
    }
    return out;
}

std::vector<Point2> points_from(const json& j) {
    if (!j.is_array()) {
        throw PierceError(ErrorKind::Io, "expected a point list");
    }
    std::vector<Point2> out;
    for (const auto& e : j) {
        out.push_back(point_from(e));
    }
    return out;
}

template <typename F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw PierceError(ErrorKind::Io, std::string("malformed document: ") + e.what());
    }
}

}  // namespace

void validate_run_config(const RunConfig& config) {
    if (!(config.tol_geom > 0.0) || !(config.tol_lp > 0.0)) {
        throw PierceError(ErrorKind::Argument, "tolerances must be positive");
    }
    if (config.trials < 1) {
        throw PierceError(ErrorKind::Argument, "trials must be at least 1");
    }
    if (config.max_denominator < 1 || config.cloud_resolution < 1 || config.replication_cap < 1) {
        throw PierceError(ErrorKind::Argument, "denominator, cloud resolution and replication cap must be positive");
    }
    if (config.alpha && !(*config.alpha > 0.0 && *config.alpha < 1.0 / 3.0)) {
        throw PierceError(ErrorKind::Argument, "alpha must lie in (0, 1/3)");
    }
}

void validate_instance(const Instance& inst) {
    validate_curve(inst.curve);
    if (inst.bodies.empty()) {
        throw PierceError(ErrorKind::Validation, "instance has no bodies");
    }
    if (inst.p < 2) {
        throw PierceError(ErrorKind::Validation, "p must be at least 2");
    }
    for (const auto& b : inst.bodies) {
        validate_body(b);
    }
}

json instance_to_json(const Instance& inst) {
    json bodies = json::array();
    for (const auto& b : inst.bodies) {
        bodies.push_back({{"id", b.id}, {"vertices", points_json(b.vertices)}});
    }
    return {
        {"curve", {{"type", "circle"}, {"center", point_json(inst.curve.center)}, {"radius", inst.curve.radius}}},
        {"bodies", bodies},
        {"p", inst.p},
        {"meta", inst.meta},
    };
}

Instance instance_from_json(const json& j) {
    return guarded([&] {
        Instance inst;
        const json& curve = j.at("curve");
        if (curve.at("type").get<std::string>() != "circle") {
            throw PierceError(ErrorKind::Io, "only circle curves are supported");
        }
        inst.curve.center = point_from(curve.at("center"));
        inst.curve.radius = curve.at("radius").get<double>();
        for (const auto& b : j.at("bodies")) {
            inst.bodies.push_back({b.at("id").get<int>(), points_from(b.at("vertices"))});
        }
        inst.p = j.at("p").get<int>();
        if (j.contains("meta")) {
            inst.meta = j.at("meta").get<std::map<std::string, std::string>>();
        }
        validate_instance(inst);
        return inst;
    });
}

json report_to_json(const TransversalReport& rep) {
    json stages = json::array();
    for (const auto& s : rep.stages) {
        json stats = json::object();
        for (const auto& [k, v] : s.stats) {
            stats[k] = v;
        }
        stages.push_back({{"name", s.name}, {"seconds", s.seconds}, {"stats", stats}});
    }
    const auto& f = rep.flags;
    return {
        {"transversal", points_json(rep.transversal)},
        {"tau_star", rep.tau_star},
        {"packing_size", rep.packing_size},
        {"m", rep.m},
        {"D", rep.denominator},
        {"multiset_size", rep.multiset_size},
        {"z", point_json(rep.z)},
        {"coverage", rep.coverage},
        {"epsilon", rep.epsilon},
        {"pierced", rep.pierced},
        {"heavy_fallback", rep.heavy_fallback},
        {"alpha", rep.alpha},
        {"p", rep.p},
        {"p_effective", rep.p_effective},
        {"filtered", rep.filtered},
        {"candidates", rep.candidates},
        {"witnesses", rep.witnesses},
        {"cloud_min_fraction", rep.cloud_min_fraction},
        {"flags",
         {{"all_hit", f.all_hit},
          {"duality", f.duality},
          {"packing_eq", f.packing_eq},
          {"coverage_le_d", f.coverage_le_d},
          {"tau_eps", f.tau_eps},
          {"cloud_fraction", f.cloud_fraction},
          {"greedy_bound", f.greedy_bound},
          {"p2", f.p2}}},
        {"stages", stages},
    };
}

TransversalReport report_from_json(const json& j) {
    return guarded([&] {
        TransversalReport rep;
        rep.transversal = points_from(j.at("transversal"));
        rep.tau_star = j.at("tau_star").get<double>();
        rep.packing_size = j.value("packing_size", 0.0);
        rep.m = j.at("m").get<std::vector<std::int64_t>>();
        rep.denominator = j.at("D").get<std::int64_t>();
        rep.multiset_size = j.value("multiset_size", std::int64_t{0});
        rep.z = point_from(j.at("z"));
        rep.coverage = j.at("coverage").get<std::int64_t>();
        rep.epsilon = j.value("epsilon", 0.0);
        rep.pierced = j.value("pierced", 0);
        rep.heavy_fallback = j.value("heavy_fallback", false);
        rep.alpha = j.value("alpha", 0.0);
        rep.p = j.value("p", 2);
        rep.p_effective = j.value("p_effective", rep.p);
        rep.filtered = j.value("filtered", std::vector<int>{});
        rep.candidates = j.value("candidates", std::size_t{0});
        rep.witnesses = j.value("witnesses", std::size_t{0});
        rep.cloud_min_fraction = j.value("cloud_min_fraction", 0.0);
        if (j.contains("flags")) {
            const json& f = j.at("flags");
            rep.flags.all_hit = f.value("all_hit", false);
            rep.flags.duality = f.value("duality", false);
            rep.flags.packing_eq = f.value("packing_eq", false);
            rep.flags.coverage_le_d = f.value("coverage_le_d", false);
            rep.flags.tau_eps = f.value("tau_eps", false);
            rep.flags.cloud_fraction = f.value("cloud_fraction", false);
            rep.flags.greedy_bound = f.value("greedy_bound", false);
            rep.flags.p2 = f.value("p2", false);
        }
        if (j.contains("stages")) {
            for (const auto& s : j.at("stages")) {
                StageRecord r{s.at("name").get<std::string>(), s.at("seconds").get<double>(), {}};
                for (const auto& [k, v] : s.at("stats").items()) {
                    r.stats.emplace_back(k, v.get<double>());
                }
                rep.stages.push_back(std::move(r));
            }
        }
        return rep;
    });
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw PierceError(ErrorKind::Io, "cannot open " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return guarded([&] { return json::parse(buf.str()); });
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) {
        throw PierceError(ErrorKind::Io, "cannot write " + path.string());
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw PierceError(ErrorKind::Io, "write failed for " + path.string());
    }
}

Instance read_instance(const std::filesystem::path& path) { return instance_from_json(read_json_file(path)); }

void write_instance(const std::filesystem::path& path, const Instance& inst) {
    write_json_file(path, instance_to_json(inst));
}

TransversalReport read_report(const std::filesystem::path& path) { return report_from_json(read_json_file(path)); }

void write_report(const std::filesystem::path& path, const TransversalReport& rep) {
    write_json_file(path, report_to_json(rep));
}

}  // namespace pierce
