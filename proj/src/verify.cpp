#include "pierce/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pierce {

std::vector<CheckLine> verify_report(const Instance& inst, const TransversalReport& rep, const RunConfig& config) {
    const double tol = config.tol_geom;
    const auto& bodies = inst.bodies;
    const std::size_t n = bodies.size();
    std::vector<CheckLine> out;

    std::size_t missed = 0;
    for (const auto& b : bodies) {
        bool hit = false;
        for (Point2 x : rep.transversal) {
            hit = hit || body_contains(b, x, tol);
        }
        missed += hit ? 0 : 1;
    }
    out.push_back({"all_hit", missed == 0, std::to_string(missed) + " bodies missed"});

    const auto cands = candidate_points(bodies, kNudgeEps, tol);
    const auto members = membership(bodies, cands, tol);
    const FractionalTransversal ft = fractional_transversal(bodies, cands, tol);
    const double gap = std::abs(ft.size - rep.tau_star);
    out.push_back({"tau_star", gap <= 1e-6, "recomputed " + std::to_string(ft.size)});

    const bool shape_ok = rep.m.size() == n && rep.denominator >= 1 &&
                          std::all_of(rep.m.begin(), rep.m.end(), [](std::int64_t v) { return v >= 0; });
    out.push_back({"m_shape", shape_ok, std::to_string(rep.m.size()) + " multiplicities"});
    if (shape_ok) {
        std::int64_t worst = 0;
        for (const auto& set : members) {
            std::int64_t load = 0;
            for (int b : set) {
                load += rep.m[static_cast<std::size_t>(b)];
            }
            worst = std::max(worst, load);
        }
        out.push_back({"packing_eq", worst <= rep.denominator,
                       "max load " + std::to_string(worst) + " vs D " + std::to_string(rep.denominator)});

        std::int64_t coverage = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!body_curve_arcs(bodies[i], inst.curve, tol).empty() && body_contains(bodies[i], rep.z, tol)) {
                coverage += rep.m[i];
            }
        }
        out.push_back({"coverage", coverage == rep.coverage && coverage <= rep.denominator,
                       "recounted " + std::to_string(coverage)});
    }

    const double bound = ft.size * (1.0 + std::log(static_cast<double>(n))) + 1.0;
    out.push_back({"greedy_bound", static_cast<double>(rep.transversal.size()) <= bound,
                   std::to_string(rep.transversal.size()) + " <= " + std::to_string(bound)});
    return out;
}

}  // namespace pierce
