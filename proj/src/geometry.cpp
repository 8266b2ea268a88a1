#include "pierce/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <boost/dynamic_bitset.hpp>

#include "pierce/error.hpp"

namespace pierce {

double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
double norm(Point2 a) { return std::hypot(a.x, a.y); }

namespace {

bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double segment_distance(Point2 p, Point2 a, Point2 b) {
    const Point2 d = b - a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) {
        return norm(p - a);
    }
    const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return norm(p - (a + t * d));
}

struct Box {
    double min_x, min_y, max_x, max_y;

    bool contains(Point2 p, double tol) const {
        return p.x >= min_x - tol && p.x <= max_x + tol && p.y >= min_y - tol && p.y <= max_y + tol;
    }
    bool overlaps(const Box& o, double tol) const {
        return min_x <= o.max_x + tol && o.min_x <= max_x + tol && min_y <= o.max_y + tol &&
               o.min_y <= max_y + tol;
    }
};

Box bounding_box(const ConvexBody& body) {
    Box box{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Point2& v : body.vertices) {
        box.min_x = std::min(box.min_x, v.x);
        box.min_y = std::min(box.min_y, v.y);
        box.max_x = std::max(box.max_x, v.x);
        box.max_y = std::max(box.max_y, v.y);
    }
    return box;
}

// Dedup within `tol`, preserving first-occurrence order.
std::vector<Point2> dedup_points(const std::vector<Point2>& pts, double tol) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pts[a].x < pts[b].x || (pts[a].x == pts[b].x && a < b);
    });
    std::vector<std::size_t> rep(pts.size());
    std::iota(rep.begin(), rep.end(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::size_t a = order[i];
        if (rep[a] != a) {
            continue;
        }
        for (std::size_t j = i + 1; j < order.size() && pts[order[j]].x - pts[a].x <= tol; ++j) {
            const std::size_t b = order[j];
            if (rep[b] == b && std::abs(pts[b].y - pts[a].y) <= tol) {
                // keep the earlier index as representative
                if (a < b) {
                    rep[b] = a;
                } else {
                    rep[a] = b;
                    break;
                }
            }
        }
    }
    std::vector<Point2> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (rep[i] == i) {
            out.push_back(pts[i]);
        }
    }
    return out;
}

}  // namespace

ConvexBody make_body(int id, std::span<const Point2> points) {
    if (points.empty()) {
        throw PierceError(ErrorKind::Validation, "body needs at least one point");
    }
    std::vector<Point2> pts(points.begin(), points.end());
    for (const Point2& p : pts) {
        if (!finite(p)) {
            throw PierceError(ErrorKind::Validation, "non-finite body point");
        }
    }
    std::sort(pts.begin(), pts.end(),
              [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts = dedup_points(pts, kTolGeom);
    if (pts.size() <= 2) {
        return {id, pts};
    }
    // Andrew's monotone chain; collinear points are dropped.
    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    auto turn = [](Point2 o, Point2 a, Point2 b) { return cross(a - o, b - o); };
    for (const Point2& p : pts) {
        while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 0.0) {
            --k;
        }
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
        while (k >= lower && turn(hull[k - 2], hull[k - 1], *it) <= 0.0) {
            --k;
        }
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return {id, hull};
}

void validate_body(const ConvexBody& body, double tol) {
    const auto& v = body.vertices;
    auto fail = [&](const std::string& why) {
        throw PierceError(ErrorKind::Validation, "body " + std::to_string(body.id) + ": " + why);
    };
    if (v.empty()) {
        fail("no vertices");
    }
    for (const Point2& p : v) {
        if (!finite(p)) {
            fail("non-finite vertex");
        }
    }
    const std::size_t n = v.size();
    if (n == 1) {
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (norm(v[(i + 1) % n] - v[i]) <= tol) {
            fail("repeated adjacent vertex");
        }
    }
    if (n == 2) {
        return;
    }
    double area2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 e1 = v[(i + 1) % n] - v[i];
        const Point2 e2 = v[(i + 2) % n] - v[(i + 1) % n];
        if (cross(e1, e2) < -tol * norm(e1) * norm(e2)) {
            fail("not convex or not counter-clockwise");
        }
        area2 += cross(v[i], v[(i + 1) % n]);
    }
    if (area2 <= 0.0) {
        fail("clockwise or degenerate orientation");
    }
}

Point2 CurveModel::point_at(double angle) const {
    return {center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)};
}

void validate_curve(const CurveModel& curve) {
    if (!(curve.radius > 0.0) || !std::isfinite(curve.radius) || !finite(curve.center)) {
        throw PierceError(ErrorKind::Validation, "curve radius must be positive and finite");
    }
}

double normalize_angle(double angle) {
    double a = std::fmod(angle, kTwoPi);
    if (a < 0.0) {
        a += kTwoPi;
    }
    if (a >= kTwoPi) {
        a = 0.0;
    }
    return a;
}

double AngularInterval::length() const {
    if (is_full()) {
        return kTwoPi;
    }
    return wraps ? end + kTwoPi - start : end - start;
}

double AngularInterval::midpoint() const { return normalize_angle(start + 0.5 * length()); }

bool AngularInterval::is_full() const { return !wraps && start == 0.0 && end >= kTwoPi; }

AngularInterval AngularInterval::from_start_length(double start, double length) {
    if (length >= kTwoPi) {
        return full();
    }
    const double s = normalize_angle(start);
    const double e = s + std::max(length, 0.0);
    if (e >= kTwoPi) {
        return {s, e - kTwoPi, true};
    }
    return {s, e, false};
}

AngularInterval AngularInterval::full() { return {0.0, kTwoPi, false}; }

bool body_contains(const ConvexBody& body, Point2 pt, double tol) {
    const auto& v = body.vertices;
    if (v.empty()) {
        throw PierceError(ErrorKind::Validation, "body has no vertices");
    }
    if (v.size() == 1) {
        return norm(pt - v[0]) <= tol;
    }
    if (v.size() == 2) {
        return segment_distance(pt, v[0], v[1]) <= tol;
    }
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = v[i];
        const Point2 e = v[(i + 1) % n] - a;
        if (cross(e, pt - a) < -tol * norm(e)) {
            return false;
        }
    }
    return true;
}

std::vector<AngularInterval> body_curve_arcs(const ConvexBody& body, const CurveModel& curve,
                                             double tol) {
    const auto& v = body.vertices;
    if (v.empty()) {
        throw PierceError(ErrorKind::Validation, "body has no vertices");
    }
    const double angle_tol = 1e-12;
    const Point2 c = curve.center;
    const double r = curve.radius;

    // Vertices on the curve are snapped to their exact polar angle so that
    // bodies sharing such a vertex produce identical breakpoints.
    std::vector<double> snapped;
    for (const Point2& p : v) {
        if (std::abs(norm(p - c) - r) <= tol * std::max(1.0, r)) {
            snapped.push_back(normalize_angle(std::atan2(p.y - c.y, p.x - c.x)));
        }
    }
    std::vector<double> breaks = snapped;
    const std::size_t n = v.size();
    const std::size_t edges = n == 1 ? 0 : (n == 2 ? 1 : n);
    for (std::size_t i = 0; i < edges; ++i) {
        const Point2 a = v[i];
        const Point2 d = v[(i + 1) % n] - a;
        const Point2 ac = a - c;
        const double qa = dot(d, d);
        const double qb = 2.0 * dot(d, ac);
        const double qc = dot(ac, ac) - r * r;
        double disc = qb * qb - 4.0 * qa * qc;
        if (disc < 0.0) {
            if (disc < -1e-12 * qb * qb - 1e-15) {
                continue;
            }
            disc = 0.0;
        }
        const double sq = std::sqrt(disc);
        for (double s : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)}) {
            const Point2 p = a + s * d;
            const double ang = normalize_angle(std::atan2(p.y - c.y, p.x - c.x));
            const bool near_snap = std::any_of(snapped.begin(), snapped.end(), [&](double t) {
                const double diff = std::abs(t - ang);
                return std::min(diff, kTwoPi - diff) <= 1e-9;
            });
            if (!near_snap) {
                breaks.push_back(ang);
            }
        }
    }
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> uniq;
    for (double b : breaks) {
        if (uniq.empty() || b - uniq.back() > angle_tol) {
            uniq.push_back(b);
        }
    }
    if (uniq.size() > 1 && uniq.front() + kTwoPi - uniq.back() <= angle_tol) {
        uniq.pop_back();
    }

    if (uniq.empty()) {
        if (body_contains(body, curve.point_at(0.0), tol)) {
            return {AngularInterval::full()};
        }
        return {};
    }

    // Alternating elements: breakpoint k, then the open gap (t_k, t_{k+1}).
    const std::size_t k = uniq.size();
    struct Element {
        double start, end;
        bool inside;
    };
    std::vector<Element> elems;
    elems.reserve(2 * k);
    for (std::size_t i = 0; i < k; ++i) {
        const double t0 = uniq[i];
        const double t1 = i + 1 < k ? uniq[i + 1] : uniq[0] + kTwoPi;
        elems.push_back({t0, t0, body_contains(body, curve.point_at(t0), tol)});
        elems.push_back({t0, t1, body_contains(body, curve.point_at(0.5 * (t0 + t1)), tol)});
    }
    const auto outside = std::find_if(elems.begin(), elems.end(), [](const Element& e) { return !e.inside; });
    if (outside == elems.end()) {
        return {AngularInterval::full()};
    }
    const std::size_t m = elems.size();
    const std::size_t first_out = static_cast<std::size_t>(outside - elems.begin());
    std::vector<AngularInterval> arcs;
    std::size_t i = 0;
    while (i < m) {
        const std::size_t idx = (first_out + i) % m;
        if (!elems[idx].inside) {
            ++i;
            continue;
        }
        // Unrolled start of the run; elements after the wrap get +2pi.
        const double offset_start = (first_out + i) >= m ? kTwoPi : 0.0;
        const double run_start = elems[idx].start + offset_start;
        double run_end = run_start;
        while (i < m && elems[(first_out + i) % m].inside) {
            const std::size_t j = (first_out + i) % m;
            const double off = (first_out + i) >= m ? kTwoPi : 0.0;
            run_end = elems[j].end + off;
            ++i;
        }
        arcs.push_back(AngularInterval::from_start_length(run_start, run_end - run_start));
    }
    std::sort(arcs.begin(), arcs.end(),
              [](const AngularInterval& a, const AngularInterval& b) { return a.start < b.start; });
    return arcs;
}

std::optional<double> arcs_common_point(std::span<const AngularInterval> a,
                                        std::span<const AngularInterval> b, double tol) {
    struct Piece {
        double start, length;
    };
    std::vector<Piece> pieces;
    auto add_all = [&](std::span<const AngularInterval> arcs) {
        for (const auto& arc : arcs) {
            pieces.push_back({arc.start, arc.length()});
        }
    };
    const bool a_full = std::any_of(a.begin(), a.end(), [](const auto& x) { return x.is_full(); });
    const bool b_full = std::any_of(b.begin(), b.end(), [](const auto& x) { return x.is_full(); });
    if (a_full && !b.empty()) {
        add_all(b);
    } else if (b_full && !a.empty()) {
        add_all(a);
    } else {
        for (const auto& x : a) {
            const double s1 = x.start;
            const double e1 = s1 + x.length();
            for (const auto& y : b) {
                for (double shift : {-kTwoPi, 0.0, kTwoPi}) {
                    const double s2 = y.start + shift;
                    const double e2 = s2 + y.length();
                    const double lo = std::max(s1, s2);
                    const double hi = std::min(e1, e2);
                    if (hi >= lo - tol) {
                        pieces.push_back({normalize_angle(lo), std::max(hi - lo, 0.0)});
                    }
                }
            }
        }
    }
    if (pieces.empty()) {
        return std::nullopt;
    }
    const auto best = std::min_element(pieces.begin(), pieces.end(), [](const Piece& p, const Piece& q) {
        return p.start < q.start || (p.start == q.start && p.length > q.length);
    });
    return normalize_angle(best->start + 0.5 * best->length);
}

std::optional<Point2> segment_intersection(Point2 a1, Point2 a2, Point2 b1, Point2 b2, double tol) {
    const Point2 d1 = a2 - a1;
    const Point2 d2 = b2 - b1;
    const double l1 = norm(d1);
    const double l2 = norm(d2);
    if (l1 <= tol || l2 <= tol) {
        return std::nullopt;
    }
    const double den = cross(d1, d2);
    if (std::abs(den) <= tol * l1 * l2) {
        return std::nullopt;
    }
    const Point2 w = b1 - a1;
    const double t = cross(w, d2) / den;
    const double u = cross(w, d1) / den;
    const double tt = tol / l1;
    const double tu = tol / l2;
    if (t < -tt || t > 1.0 + tt || u < -tu || u > 1.0 + tu) {
        return std::nullopt;
    }
    // Averaging both parametric evaluations keeps the result exactly symmetric
    // under swapping the two segments.
    const Point2 p = a1 + std::clamp(t, 0.0, 1.0) * d1;
    const Point2 q = b1 + std::clamp(u, 0.0, 1.0) * d2;
    return Point2{0.5 * (p.x + q.x), 0.5 * (p.y + q.y)};
}

std::vector<Point2> candidate_points(std::span<const ConvexBody> bodies, double nudge_eps, double tol) {
    std::vector<Point2> base;
    std::vector<Box> boxes;
    boxes.reserve(bodies.size());
    for (const auto& b : bodies) {
        base.insert(base.end(), b.vertices.begin(), b.vertices.end());
        boxes.push_back(bounding_box(b));
    }
    auto edge_count = [](const ConvexBody& b) -> std::size_t {
        const std::size_t n = b.vertices.size();
        return n <= 1 ? 0 : (n == 2 ? 1 : n);
    };
    for (std::size_t i = 0; i < bodies.size(); ++i) {
        const auto& vi = bodies[i].vertices;
        for (std::size_t j = i + 1; j < bodies.size(); ++j) {
            if (!boxes[i].overlaps(boxes[j], tol)) {
                continue;
            }
            const auto& vj = bodies[j].vertices;
            for (std::size_t a = 0; a < edge_count(bodies[i]); ++a) {
                const Point2 a1 = vi[a];
                const Point2 a2 = vi[(a + 1) % vi.size()];
                for (std::size_t b = 0; b < edge_count(bodies[j]); ++b) {
                    if (auto p = segment_intersection(a1, a2, vj[b], vj[(b + 1) % vj.size()], tol)) {
                        base.push_back(*p);
                    }
                }
            }
        }
    }
    base = dedup_points(base, tol);
    std::vector<Point2> out;
    out.reserve(base.size() * 5);
    out.insert(out.end(), base.begin(), base.end());
    for (const Point2& p : base) {
        for (Point2 dir : {Point2{1, 1}, Point2{-1, 1}, Point2{-1, -1}, Point2{1, -1}}) {
            out.push_back(p + nudge_eps * dir);
        }
    }
    return dedup_points(out, tol);
}

std::vector<std::vector<int>> membership(std::span<const ConvexBody> bodies,
                                         std::span<const Point2> points, double tol) {
    std::vector<Box> boxes;
    boxes.reserve(bodies.size());
    for (const auto& b : bodies) {
        boxes.push_back(bounding_box(b));
    }
    std::vector<std::vector<int>> out(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        for (std::size_t i = 0; i < bodies.size(); ++i) {
            if (boxes[i].contains(points[k], tol) && body_contains(bodies[i], points[k], tol)) {
                out[k].push_back(static_cast<int>(i));
            }
        }
    }
    return out;
}

std::vector<std::size_t> maximal_points(const std::vector<std::vector<int>>& members) {
    int universe = 0;
    for (const auto& m : members) {
        if (!m.empty()) {
            universe = std::max(universe, m.back() + 1);
        }
    }
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < members.size(); ++k) {
        if (!members[k].empty()) {
            order.push_back(k);
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return members[a].size() > members[b].size();
    });
    std::vector<boost::dynamic_bitset<>> kept_sets;
    std::vector<std::size_t> kept;
    for (std::size_t k : order) {
        boost::dynamic_bitset<> s(static_cast<std::size_t>(universe));
        for (int i : members[k]) {
            s.set(static_cast<std::size_t>(i));
        }
        const bool dominated = std::any_of(kept_sets.begin(), kept_sets.end(),
                                           [&](const auto& big) { return s.is_subset_of(big); });
        if (!dominated) {
            kept_sets.push_back(std::move(s));
            kept.push_back(k);
        }
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

namespace {

struct HittingSearch {
    std::vector<boost::dynamic_bitset<>> covers;        // per candidate: bodies hit
    std::vector<std::vector<std::size_t>> hitters;      // per body: candidates inside
    std::size_t max_cover = 0;
    std::vector<std::size_t> chosen;

    bool solve(const boost::dynamic_bitset<>& unhit, int budget) {
        if (unhit.none()) {
            return true;
        }
        if (budget == 0 || static_cast<std::size_t>(budget) * max_cover < unhit.count()) {
            return false;
        }
        // Branch on the unhit body with the fewest hitting candidates.
        std::size_t pick = unhit.find_first();
        std::size_t best = hitters[pick].size();
        for (std::size_t b = unhit.find_next(pick); b != boost::dynamic_bitset<>::npos; b = unhit.find_next(b)) {
            if (hitters[b].size() < best) {
                best = hitters[b].size();
                pick = b;
            }
        }
        for (std::size_t c : hitters[pick]) {
            chosen.push_back(c);
            if (solve(unhit - covers[c], budget - 1)) {
                return true;
            }
            chosen.pop_back();
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<Point2>> brute_min_transversal(std::span<const ConvexBody> bodies,
                                                         std::span<const Point2> candidates, int k_max,
                                                         double tol) {
    if (k_max < 1) {
        throw PierceError(ErrorKind::Argument, "k_max must be at least 1");
    }
    const auto members = membership(bodies, candidates, tol);
    const auto keep = maximal_points(members);
    HittingSearch search;
    search.hitters.resize(bodies.size());
    for (std::size_t idx = 0; idx < keep.size(); ++idx) {
        boost::dynamic_bitset<> s(bodies.size());
        for (int b : members[keep[idx]]) {
            s.set(static_cast<std::size_t>(b));
            search.hitters[static_cast<std::size_t>(b)].push_back(idx);
        }
        search.max_cover = std::max(search.max_cover, s.count());
        search.covers.push_back(std::move(s));
    }
    for (auto& h : search.hitters) {
        if (h.empty()) {
            return std::nullopt;
        }
        std::stable_sort(h.begin(), h.end(), [&](std::size_t a, std::size_t b) {
            return search.covers[a].count() > search.covers[b].count();
        });
    }
    boost::dynamic_bitset<> all(bodies.size());
    all.set();
    for (int k = 1; k <= k_max; ++k) {
        search.chosen.clear();
        if (search.solve(all, k)) {
            std::vector<Point2> out;
            for (std::size_t c : search.chosen) {
                out.push_back(candidates[keep[c]]);
            }
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace pierce
