#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace pierce {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kTolGeom = 1e-9;
inline constexpr double kNudgeEps = 1e-6;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point2, Point2) = default;
};

double cross(Point2 a, Point2 b);
double dot(Point2 a, Point2 b);
double norm(Point2 a);

// A closed convex polygon with a color index. Vertices are counter-clockwise.
// One vertex is a point, two vertices a segment.
struct ConvexBody {
    int id = 0;
    std::vector<Point2> vertices;
};

// Convex hull of `points` (collinear and duplicate points dropped), CCW.
ConvexBody make_body(int id, std::span<const Point2> points);

// Throws PierceError(Validation) if the body breaks its invariants.
void validate_body(const ConvexBody& body, double tol = kTolGeom);

struct CurveModel {
    Point2 center{};
    double radius = 1.0;

    Point2 point_at(double angle) const;
    static CurveModel unit_circle() { return {}; }
};

void validate_curve(const CurveModel& curve);

double normalize_angle(double angle);

// Closed arc of the curve, counter-clockwise from `start` to `end`.
// `wraps` is set when the arc passes through angle 0. A full circle is
// start = 0, end = 2pi, wraps = false.
struct AngularInterval {
    double start = 0.0;
    double end = 0.0;
    bool wraps = false;

    double length() const;
    double midpoint() const;
    bool is_full() const;

    static AngularInterval from_start_length(double start, double length);
    static AngularInterval full();
};

bool body_contains(const ConvexBody& body, Point2 pt, double tol = kTolGeom);

std::vector<AngularInterval> body_curve_arcs(const ConvexBody& body, const CurveModel& curve,
                                             double tol = kTolGeom);

// Midpoint of the common sub-arc with the smallest normalized start angle.
std::optional<double> arcs_common_point(std::span<const AngularInterval> a,
                                        std::span<const AngularInterval> b,
                                        double tol = kTolGeom);

std::optional<Point2> segment_intersection(Point2 a1, Point2 a2, Point2 b1, Point2 b2,
                                           double tol = kTolGeom);

std::vector<Point2> candidate_points(std::span<const ConvexBody> bodies,
                                     double nudge_eps = kNudgeEps, double tol = kTolGeom);

// Bodies containing each point; `membership[k]` is sorted ascending.
std::vector<std::vector<int>> membership(std::span<const ConvexBody> bodies,
                                         std::span<const Point2> points, double tol = kTolGeom);

// Indices of points whose membership set is not strictly contained in (or equal
// to an earlier copy of) another point's set. Such points dominate the rest for
// any hitting or packing question.
std::vector<std::size_t> maximal_points(const std::vector<std::vector<int>>& members);

std::optional<std::vector<Point2>> brute_min_transversal(std::span<const ConvexBody> bodies,
                                                         std::span<const Point2> candidates,
                                                         int k_max, double tol = kTolGeom);

}  // namespace pierce
