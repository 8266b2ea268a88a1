#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pierce/geometry.hpp"
#include "pierce/lp.hpp"
#include "pierce/witness.hpp"

namespace pierce {

struct FractionalTransversal {
    std::vector<Point2> points;
    std::vector<double> weights;
    double size = 0.0;
};

struct FractionalPacking {
    std::vector<double> weights;  // one per body
    double size = 0.0;
    std::size_t rounds = 0;       // constraint-generation rounds
};

// Minimum-weight point weighting over the candidates hitting every body with
// total weight >= 1. Points with zero weight are dropped from the result.
FractionalTransversal fractional_transversal(std::span<const ConvexBody> bodies,
                                             std::span<const Point2> candidates,
                                             double tol = kTolGeom);

// Maximum body weighting with total weight <= 1 at every candidate. Solved by
// constraint generation over the candidate constraints.
FractionalPacking fractional_packing(std::span<const ConvexBody> bodies,
                                     std::span<const Point2> candidates, double tol = kTolGeom);

struct RationalWeights {
    std::vector<std::int64_t> m;
    std::int64_t denominator = 1;
};

RationalWeights rationalize(std::span<const double> weights, std::int64_t max_denominator);

// Lowers multiplicities until sum_{S contains x} m(S) <= D at every listed
// membership set. Returns the number of unit decrements applied.
std::size_t enforce_packing(RationalWeights& rw, const std::vector<std::vector<int>>& members);

bool packing_holds(const RationalWeights& rw, const std::vector<std::vector<int>>& members);

struct Multiset {
    std::vector<ConvexBody> bodies;  // ids renumbered 0..size-1
    std::vector<int> source;         // index of the original body
};

Multiset replicate(std::span<const ConvexBody> bodies, std::span<const std::int64_t> m);

inline constexpr double kCloudEps = 1e-7;

std::vector<Point2> cloud_expand(const FractionalTransversal& ft, int resolution, double cloud_eps = kCloudEps);

std::vector<Point2> greedy_transversal(std::span<const ConvexBody> bodies, std::span<const Point2> candidates,
                                       double tol = kTolGeom);

// Alpha used for the spread-out statistics: 0.027 when every pair meets,
// gamma / 300 otherwise, gamma being the fraction of meeting pairs.
double default_alpha(double gamma);

struct PipelineConfig {
    std::optional<double> alpha;
    SearchStrategy::Kind strategy = SearchStrategy::Kind::Exhaustive;
    std::size_t trials = 4096;
    std::uint64_t seed = 1;
    std::int64_t max_denominator = 10'000;
    std::int64_t replication_cap = 1'000;
    int cloud_resolution = 1'000;
    double tol_geom = kTolGeom;
    double tol_lp = kTolLp;
};

struct StageRecord {
    std::string name;
    double seconds = 0.0;
    std::vector<std::pair<std::string, double>> stats;
};

struct VerificationFlags {
    bool all_hit = false;
    bool duality = false;
    bool packing_eq = false;       // sum m(S) <= D at every candidate
    bool coverage_le_d = false;    // heavy point lies in at most D copies
    bool tau_eps = false;          // tau* * eps <= 1
    bool cloud_fraction = false;   // every body holds >= 1/tau* - 1/R of the cloud
    bool greedy_bound = false;     // |transversal| <= tau* (1 + ln n) + 1
    bool p2 = false;               // (p,2) condition verified exactly

    bool all() const {
        return all_hit && duality && packing_eq && coverage_le_d && tau_eps && cloud_fraction && greedy_bound;
    }
};

struct TransversalReport {
    std::vector<Point2> transversal;
    double tau_star = 0.0;
    double packing_size = 0.0;
    std::vector<std::int64_t> m;
    std::int64_t denominator = 1;
    std::int64_t multiset_size = 0;
    Point2 z;
    std::int64_t coverage = 0;  // copies of the multiset containing z
    double epsilon = 0.0;
    int pierced = 0;
    bool heavy_fallback = false;
    double alpha = 0.0;
    int p = 2;
    int p_effective = 2;
    std::vector<int> filtered;  // bodies missing the curve
    std::size_t candidates = 0;
    std::size_t witnesses = 0;
    double cloud_min_fraction = 0.0;
    VerificationFlags flags;
    std::vector<StageRecord> stages;
};

TransversalReport run_pipeline(std::span<const ConvexBody> bodies, const CurveModel& curve, int p,
                               const PipelineConfig& config = {});

}  // namespace pierce
