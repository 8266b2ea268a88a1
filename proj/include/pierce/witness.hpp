#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pierce/geometry.hpp"

namespace pierce {

// A curve point certifying that colors `a` and `b` (a < b) meet on the curve.
struct WitnessPoint {
    double angle = 0.0;
    int a = 0;
    int b = 0;
};

// Witness points sorted circularly by angle, ties by color pair. Keeps the
// sorted occurrence positions of every color for the combinatorial queries.
class WitnessList {
public:
    WitnessList() = default;
    // Sorts `points`; throws PierceError(Validation) on a repeated color pair,
    // equal colors, a color outside [0, colors), or an unnormalized angle.
    WitnessList(std::vector<WitnessPoint> points, int colors);

    std::size_t size() const { return entries_.size(); }
    int colors() const { return colors_; }
    const std::vector<WitnessPoint>& entries() const { return entries_; }
    const WitnessPoint& operator[](std::size_t i) const { return entries_[i]; }
    std::span<const std::size_t> occurrences(int color) const;

private:
    std::vector<WitnessPoint> entries_;
    std::vector<std::vector<std::size_t>> occurrences_;
    int colors_ = 0;
};

WitnessList build_witness_list(std::span<const ConvexBody> bodies, const CurveModel& curve,
                               double tol = kTolGeom);

std::size_t circ_distance(std::size_t a, std::size_t b, std::size_t n);

// Integer distance threshold ceil(alpha * n) used by the spread-out test.
std::size_t spread_threshold(double alpha, std::size_t n);

// True iff `r` of the sorted `positions` have consecutive gaps of at least
// `threshold` (circular gaps include the wrap-around). For circular order this
// is the same as all pairwise circular distances being >= threshold.
bool spread_subset_exists(std::span<const std::size_t> positions, std::size_t n, std::size_t threshold,
                          std::size_t r, bool circular);

// `positions` must be sorted ascending and lie in [0, n).
bool is_spread_out(std::span<const std::size_t> positions, std::size_t n, double alpha);
bool is_spread_out(const WitnessList& q, int color, double alpha);

// Indices start, start+1, ..., start+length (mod n); `length` counts steps,
// so a single index has length 0.
struct CircularInterval {
    std::size_t start = 0;
    std::size_t length = 0;
    bool empty = true;

    bool contains(std::size_t index, std::size_t n) const;
};

struct ThreeIntervalCover {
    std::array<CircularInterval, 3> intervals;
    // False when the longest-gap construction did not close and the cover
    // came from the exact greedy search instead.
    bool constructive = true;
};

std::optional<ThreeIntervalCover> three_interval_cover(std::span<const std::size_t> positions,
                                                       std::size_t n, double alpha);
std::optional<ThreeIntervalCover> three_interval_cover(const WitnessList& q, int color, double alpha);

// Minimum number of intervals of at most `max_length` steps covering all
// positions, circular or linear. Exact (greedy from every start).
std::size_t min_interval_cover(std::span<const std::size_t> positions, std::size_t n,
                               std::size_t max_length, bool circular);

// Separator indices in strictly increasing order within [0, n).
struct SeparatorQuadruple {
    std::array<std::size_t, 4> idx{};
};

void validate_quadruple(const SeparatorQuadruple& quad, std::size_t n);

bool quadruple_pierces(std::span<const std::size_t> positions, std::size_t n,
                       const SeparatorQuadruple& quad);
bool quadruple_pierces(const WitnessList& q, const SeparatorQuadruple& quad, int color);

// Angle of separator y_i, placed at the angular midpoint between q_{i-1} and q_i.
std::vector<double> separator_angles(const WitnessList& q);

Point2 piercing_point(const CurveModel& curve, const WitnessList& q, const SeparatorQuadruple& quad,
                      double tol = kTolGeom);

// Number of separator quadruples piercing a color with these occurrences;
// equals the elementary symmetric polynomial e4 of the circular gaps.
unsigned __int128 piercing_quadruple_count(std::span<const std::size_t> positions, std::size_t n);

struct QuadrupleMean {
    double mean = 0.0;       // average number of colors pierced over all C(N,4) quadruples
    std::int64_t ceiling = 0;  // exact ceiling of that mean
};

QuadrupleMean expected_pierced(const WitnessList& q);

struct SearchStrategy {
    enum class Kind { Exhaustive, Random };
    Kind kind = Kind::Exhaustive;
    std::size_t trials = 4096;
    std::uint64_t seed = 1;

    static SearchStrategy exhaustive() { return {}; }
    static SearchStrategy random(std::size_t trials, std::uint64_t seed) {
        return {Kind::Random, trials, seed};
    }
};

inline constexpr std::size_t kExhaustiveLimit = 60;

struct HeavyPoint {
    Point2 z;
    int covered = 0;  // bodies containing z, recounted geometrically
    int pierced = 0;  // colors pierced by the chosen quadruple
    std::optional<SeparatorQuadruple> quad;
    std::size_t evaluated = 0;
    int spread_out = 0;  // colors spread out at the given alpha
    bool exhaustive = false;
    bool fallback = false;  // every quadruple was degenerate
};

HeavyPoint find_heavy_point(const WitnessList& q, std::span<const ConvexBody> bodies,
                            const CurveModel& curve, const SearchStrategy& strategy, double alpha,
                            double tol = kTolGeom);

// 24 a^3 (1 - 3a) (1 - 3 sqrt(3a)), for 0 < a < 1/3.
double case_a_constant(double alpha);

// (1 - g/2) / (1 - 3g/20), for 0 < g < 1.
double not_spread_fraction_bound(double gamma);

}  // namespace pierce
