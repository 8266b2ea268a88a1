#include "pierce/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "pierce/error.hpp"
#include "pierce/meet_graph.hpp"

namespace pierce {

namespace {

constexpr int kPorts = 9;
constexpr int kPortsPerBody = 5;
constexpr int kRetries = 10;

// Uniform double in [lo, hi) built from raw engine bits so that output does
// not depend on the standard library's distribution implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

private:
    std::mt19937_64 engine_;
};

// Arc [center - before, center + after] of the unit circle together with the
// meeting point of the tangents at its ends, so the hull covers the arc.
void push_arc(std::vector<Point2>& pts, const CurveModel& curve, double center, double before, double after) {
    const double half = 0.5 * (before + after);
    const double mid = center + 0.5 * (after - before);
    pts.push_back(curve.point_at(center - before));
    pts.push_back(curve.point_at(center + after));
    const double r = curve.radius / std::cos(half);
    pts.push_back({curve.center.x + r * std::cos(mid), curve.center.y + r * std::sin(mid)});
}

bool complete(const ColorGraph& g) {
    const auto n = static_cast<std::size_t>(g.size());
    return g.edge_count() == n * (n - 1) / 2;
}

}  // namespace

Instance gen_pairwise(int n, std::uint64_t seed) {
    if (n < 2) {
        throw PierceError(ErrorKind::Argument, "gen_pairwise needs n >= 2");
    }
    const CurveModel curve = CurveModel::unit_circle();
    Rng rng(seed);
    for (int attempt = 0; attempt < kRetries; ++attempt) {
        std::array<double, kPorts> ports{};
        for (int k = 0; k < kPorts; ++k) {
            ports[static_cast<std::size_t>(k)] = kTwoPi * k / kPorts + rng.uniform(-0.15, 0.15);
        }
        Instance inst;
        inst.curve = curve;
        inst.p = 2;
        for (int i = 0; i < n; ++i) {
            // Any two 5-subsets of 9 ports share a port, and both bodies cover it.
            std::array<int, kPorts> order{};
            std::iota(order.begin(), order.end(), 0);
            for (int k = kPorts - 1; k > 0; --k) {
                std::swap(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(rng.below(k + 1))]);
            }
            std::vector<Point2> pts;
            for (int k = 0; k < kPortsPerBody; ++k) {
                const double c = ports[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
                push_arc(pts, curve, c, rng.uniform(0.01, 0.06), rng.uniform(0.01, 0.06));
            }
            inst.bodies.push_back(make_body(i, pts));
        }
        if (complete(build_meet_graph(inst.bodies, inst.curve))) {
            inst.meta = {{"generator", "pairwise"}, {"n", std::to_string(n)}, {"seed", std::to_string(seed)},
                         {"attempt", std::to_string(attempt)}};
            return inst;
        }
    }
    throw PierceError(ErrorKind::Generator, "pairwise instance failed its meet check ten times");
}

Instance gen_clustered(int p, int n, std::uint64_t seed) {
    if (p < 2) {
        throw PierceError(ErrorKind::Argument, "gen_clustered needs p >= 2");
    }
    if (n < p) {
        // With fewer than p bodies the (p,2) condition says nothing.
        throw PierceError(ErrorKind::Argument, "gen_clustered needs n >= p");
    }
    const int clusters = p - 1;
    const CurveModel curve = CurveModel::unit_circle();
    Rng rng(seed);
    const double offset = rng.uniform(0.0, kTwoPi);
    const double max_half = std::min(0.05, std::numbers::pi / (4.0 * clusters));
    Instance inst;
    inst.curve = curve;
    inst.p = p;
    for (int i = 0; i < n; ++i) {
        const int c = i % clusters;
        const double center = offset + kTwoPi * c / clusters;
        std::vector<Point2> pts;
        push_arc(pts, curve, center, rng.uniform(0.2, 1.0) * max_half, rng.uniform(0.2, 1.0) * max_half);
        const int extra = 1 + rng.below(3);
        for (int k = 0; k < extra; ++k) {
            const double a = center + rng.uniform(-0.6, 0.6) * (std::numbers::pi / clusters);
            const double r = rng.uniform(0.3, 0.85);
            pts.push_back({r * std::cos(a), r * std::sin(a)});
        }
        inst.bodies.push_back(make_body(i, pts));
    }
    const ColorGraph g = build_meet_graph(inst.bodies, inst.curve);
    if (!verify_p2(g, p)) {
        throw PierceError(ErrorKind::Generator, "clustered instance violates the (p,2) condition");
    }
    inst.meta = {{"generator", "clustered"}, {"p", std::to_string(p)}, {"n", std::to_string(n)},
                 {"seed", std::to_string(seed)}};
    return inst;
}

Instance gallery7(double delta) {
    if (!(delta >= 0.0 && delta < kTwoPi / 7.0)) {
        throw PierceError(ErrorKind::Argument, "gallery delta must lie in [0, 2pi/7)");
    }
    const CurveModel curve = CurveModel::unit_circle();
    std::array<Point2, 7> pt{};
    for (int k = 0; k < 7; ++k) {
        double angle = kTwoPi * k / 7.0;
        if (k == 5) {
            angle -= delta;
        }
        pt[static_cast<std::size_t>(k)] = curve.point_at(angle);
    }
    // a..g = 0..6: abc, cde, efa, bdf, adg, beg, cfg
    constexpr std::array<std::array<int, 3>, 7> triples{{
        {0, 1, 2}, {2, 3, 4}, {4, 5, 0}, {1, 3, 5}, {0, 3, 6}, {1, 4, 6}, {2, 5, 6},
    }};
    Instance inst;
    inst.curve = curve;
    inst.p = 2;
    for (int i = 0; i < 7; ++i) {
        std::vector<Point2> tri;
        for (int v : triples[static_cast<std::size_t>(i)]) {
            tri.push_back(pt[static_cast<std::size_t>(v)]);
        }
        inst.bodies.push_back(make_body(i, tri));
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", delta);
    inst.meta = {{"generator", "gallery"}, {"delta", buf}};
    return inst;
}

}  // namespace pierce
