#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls the library routine it is meant to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "pierce/geometry.hpp"

namespace oracle {

using pierce::Point2;

// Sutherland-Hodgman clip of a convex polygon by another convex (CCW) polygon.
inline std::vector<Point2> clip(const std::vector<Point2>& subject, const std::vector<Point2>& clipper) {
    std::vector<Point2> out = subject;
    const std::size_t m = clipper.size();
    for (std::size_t e = 0; e < m && !out.empty(); ++e) {
        const Point2 a = clipper[e];
        const Point2 b = clipper[(e + 1) % m];
        auto side = [&](Point2 p) { return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x); };
        std::vector<Point2> next;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const Point2 p = out[i];
            const Point2 q = out[(i + 1) % out.size()];
            const double sp = side(p);
            const double sq = side(q);
            if (sp >= 0) {
                next.push_back(p);
            }
            if ((sp >= 0) != (sq >= 0)) {
                const double t = sp / (sp - sq);
                next.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
            }
        }
        out = std::move(next);
    }
    return out;
}

inline double area(const std::vector<Point2>& poly) {
    double s = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point2 a = poly[i];
        const Point2 b = poly[(i + 1) % poly.size()];
        s += a.x * b.y - a.y * b.x;
    }
    return 0.5 * std::abs(s);
}

inline std::vector<Point2> intersection(const std::vector<pierce::ConvexBody>& bodies, const std::vector<int>& ids) {
    std::vector<Point2> poly = bodies[static_cast<std::size_t>(ids[0])].vertices;
    for (std::size_t k = 1; k < ids.size(); ++k) {
        poly = clip(poly, bodies[static_cast<std::size_t>(ids[k])].vertices);
    }
    return poly;
}

// All index subsets of size k of [0, n).
inline std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// k-subsets whose common intersection has area above `min_area`.
inline std::vector<std::vector<int>> positive_area_subsets(const std::vector<pierce::ConvexBody>& bodies, int k,
                                                           double min_area = 1e-9) {
    std::vector<std::vector<int>> out;
    for (const auto& s : subsets(static_cast<int>(bodies.size()), k)) {
        if (area(intersection(bodies, s)) > min_area) {
            out.push_back(s);
        }
    }
    return out;
}

inline std::size_t circ(std::size_t a, std::size_t b, std::size_t n) {
    const std::size_t d = a > b ? a - b : b - a;
    return std::min(d, n - d);
}

// Four occurrences pairwise at circular distance >= t, by trying every 4-subset.
inline bool brute_spread(const std::vector<std::size_t>& pos, std::size_t n, std::size_t t) {
    const std::size_t k = pos.size();
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            for (std::size_t c = b + 1; c < k; ++c)
                for (std::size_t d = c + 1; d < k; ++d) {
                    const std::size_t q[4] = {pos[a], pos[b], pos[c], pos[d]};
                    bool ok = true;
                    for (int i = 0; i < 4 && ok; ++i)
                        for (int j = i + 1; j < 4 && ok; ++j) ok = circ(q[i], q[j], n) >= t;
                    if (ok) return true;
                }
    return false;
}

// Whether three circular intervals of at most `len` steps cover `pos`. Any
// cover can be shifted so each interval starts at an occurrence.
inline bool brute_cover3(const std::vector<std::size_t>& pos, std::size_t n, std::size_t len) {
    if (pos.empty()) return true;
    auto in = [&](std::size_t s, std::size_t x) { return (x + n - s) % n <= len; };
    for (std::size_t a : pos)
        for (std::size_t b : pos)
            for (std::size_t c : pos) {
                bool all = true;
                for (std::size_t x : pos) all = all && (in(a, x) || in(b, x) || in(c, x));
                if (all) return true;
            }
    return false;
}

// Walks each of the four separator arcs index by index.
inline bool brute_pierces(const std::vector<std::size_t>& pos, std::size_t n, const std::size_t sep[4]) {
    std::vector<bool> mark(n, false);
    for (std::size_t p : pos) mark[p] = true;
    for (int arc = 0; arc < 4; ++arc) {
        const std::size_t from = sep[arc];
        const std::size_t to = sep[(arc + 1) % 4];
        bool found = false;
        for (std::size_t i = from; i != to; i = (i + 1) % n) found = found || mark[i];
        if (!found) return false;
    }
    return true;
}

inline std::uint64_t brute_piercing_count(const std::vector<std::size_t>& pos, std::size_t n) {
    std::uint64_t count = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c)
                for (std::size_t d = c + 1; d < n; ++d) {
                    const std::size_t s[4] = {a, b, c, d};
                    count += brute_pierces(pos, n, s) ? 1 : 0;
                }
    return count;
}

inline double choose4(double n) { return n * (n - 1) * (n - 2) * (n - 3) / 24.0; }

// Ray casting point-in-polygon (boundary handling not needed for strict tests).
inline bool ray_inside(const std::vector<Point2>& poly, Point2 p) {
    bool inside = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const Point2 a = poly[i];
        const Point2 b = poly[j];
        if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
            inside = !inside;
        }
    }
    return inside;
}

// Exact product sum over a small graph's edges: sum over v of sum of neighbour degrees.
inline long long sum_g(const std::vector<std::vector<int>>& adj) {
    long long s = 0;
    for (const auto& nb : adj)
        for (int u : nb) s += static_cast<long long>(adj[static_cast<std::size_t>(u)].size());
    return s;
}

}  // namespace oracle
