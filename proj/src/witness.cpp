#include "pierce/witness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "pierce/error.hpp"

namespace pierce {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw PierceError(ErrorKind::Argument, "alpha must lie in (0, 1)");
    }
}

// True iff some occurrence index lies in [lo, hi).
bool any_in(std::span<const std::size_t> positions, std::size_t lo, std::size_t hi) {
    if (lo >= hi) {
        return false;
    }
    const auto it = std::lower_bound(positions.begin(), positions.end(), lo);
    return it != positions.end() && *it < hi;
}

}  // namespace

// For a fixed first point the greedy choice is optimal, so trying every first
// point is exact.
bool spread_subset_exists(std::span<const std::size_t> p, std::size_t n, std::size_t t, std::size_t r,
                          bool circular) {
    const std::size_t k = p.size();
    if (k < r) {
        return false;
    }
    if (r <= 1) {
        return k >= r;
    }
    if (!circular) {
        std::size_t picked = 1;
        std::size_t last = p[0];
        for (std::size_t i = 1; i < k && picked < r; ++i) {
            if (p[i] - last >= t) {
                last = p[i];
                ++picked;
            }
        }
        return picked >= r;
    }
    std::vector<std::size_t> doubled(p.begin(), p.end());
    for (std::size_t v : p) {
        doubled.push_back(v + n);
    }
    for (std::size_t s = 0; s < k; ++s) {
        std::size_t last = doubled[s];
        std::size_t pos = s;
        std::size_t picked = 1;
        while (picked < r) {
            const auto first = doubled.begin() + static_cast<std::ptrdiff_t>(pos + 1);
            const auto stop = doubled.begin() + static_cast<std::ptrdiff_t>(s + k);
            const auto it = std::lower_bound(first, stop, last + t);
            if (it == stop) {
                break;
            }
            pos = static_cast<std::size_t>(it - doubled.begin());
            last = *it;
            ++picked;
        }
        if (picked == r && doubled[s] + n - last >= t) {
            return true;
        }
    }
    return false;
}

namespace {

struct CoverPlan {
    std::size_t count = 0;
    std::vector<CircularInterval> intervals;
};

CoverPlan greedy_cover(std::span<const std::size_t> p, std::size_t n, std::size_t max_len, bool circular) {
    const std::size_t k = p.size();
    CoverPlan best;
    if (k == 0) {
        return best;
    }
    const std::size_t starts = circular ? k : 1;
    best.count = k + 1;
    for (std::size_t s = 0; s < starts; ++s) {
        CoverPlan plan;
        std::size_t i = 0;
        while (i < k) {
            const std::size_t first = p[(s + i) % k];
            const std::size_t base = s + i >= k ? n : 0;
            const std::size_t start_unrolled = first + base;
            std::size_t last_unrolled = start_unrolled;
            while (i < k) {
                const std::size_t u = p[(s + i) % k] + (s + i >= k ? n : 0);
                if (u - start_unrolled > max_len) {
                    break;
                }
                last_unrolled = u;
                ++i;
            }
            plan.intervals.push_back({first, last_unrolled - start_unrolled, false});
            ++plan.count;
        }
        if (plan.count < best.count) {
            best = std::move(plan);
        }
    }
    return best;
}

}  // namespace

WitnessList::WitnessList(std::vector<WitnessPoint> points, int colors) : colors_(colors) {
    if (colors < 0) {
        throw PierceError(ErrorKind::Validation, "negative color count");
    }
    std::set<std::pair<int, int>> seen;
    for (auto& w : points) {
        if (w.a > w.b) {
            std::swap(w.a, w.b);
        }
        if (w.a == w.b || w.a < 0 || w.b >= colors) {
            throw PierceError(ErrorKind::Validation, "witness colors must be two distinct valid colors");
        }
        if (!(w.angle >= 0.0 && w.angle < kTwoPi)) {
            throw PierceError(ErrorKind::Validation, "witness angle not normalized");
        }
        if (!seen.insert({w.a, w.b}).second) {
            throw PierceError(ErrorKind::Validation, "color pair occurs twice");
        }
    }
    std::sort(points.begin(), points.end(), [](const WitnessPoint& x, const WitnessPoint& y) {
        if (x.angle != y.angle) {
            return x.angle < y.angle;
        }
        return std::pair(x.a, x.b) < std::pair(y.a, y.b);
    });
    entries_ = std::move(points);
    occurrences_.assign(static_cast<std::size_t>(colors), {});
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        occurrences_[static_cast<std::size_t>(entries_[i].a)].push_back(i);
        occurrences_[static_cast<std::size_t>(entries_[i].b)].push_back(i);
    }
}

std::span<const std::size_t> WitnessList::occurrences(int color) const {
    if (color < 0 || color >= colors_) {
        return {};
    }
    return occurrences_[static_cast<std::size_t>(color)];
}

WitnessList build_witness_list(std::span<const ConvexBody> bodies, const CurveModel& curve, double tol) {
    std::vector<std::vector<AngularInterval>> arcs;
    arcs.reserve(bodies.size());
    for (const auto& b : bodies) {
        arcs.push_back(body_curve_arcs(b, curve, tol));
    }
    std::vector<WitnessPoint> points;
    for (std::size_t i = 0; i < bodies.size(); ++i) {
        if (arcs[i].empty()) {
            continue;
        }
        for (std::size_t j = i + 1; j < bodies.size(); ++j) {
            if (auto angle = arcs_common_point(arcs[i], arcs[j], tol)) {
                points.push_back({*angle, static_cast<int>(i), static_cast<int>(j)});
            }
        }
    }
    return WitnessList(std::move(points), static_cast<int>(bodies.size()));
}

std::size_t circ_distance(std::size_t a, std::size_t b, std::size_t n) {
    if (n == 0) {
        throw PierceError(ErrorKind::Argument, "circular distance on an empty list");
    }
    if (a >= n || b >= n) {
        throw PierceError(ErrorKind::Argument, "index out of range");
    }
    const std::size_t fwd = (b + n - a) % n;
    const std::size_t bwd = (a + n - b) % n;
    return std::min(fwd, bwd);
}

std::size_t spread_threshold(double alpha, std::size_t n) {
    return static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n)));
}

bool is_spread_out(std::span<const std::size_t> positions, std::size_t n, double alpha) {
    check_alpha(alpha);
    if (positions.size() < 4) {
        return false;
    }
    return spread_subset_exists(positions, n, std::max<std::size_t>(spread_threshold(alpha, n), 1), 4, true);
}

bool is_spread_out(const WitnessList& q, int color, double alpha) {
    return is_spread_out(q.occurrences(color), q.size(), alpha);
}

bool CircularInterval::contains(std::size_t index, std::size_t n) const {
    if (empty || n == 0) {
        return false;
    }
    return (index + n - start) % n <= length;
}

std::optional<ThreeIntervalCover> three_interval_cover(std::span<const std::size_t> p, std::size_t n,
                                                       double alpha) {
    if (is_spread_out(p, n, alpha)) {
        return std::nullopt;
    }
    ThreeIntervalCover cover;
    const std::size_t k = p.size();
    if (k == 0) {
        return cover;
    }
    const std::size_t t = std::max<std::size_t>(spread_threshold(alpha, n), 1);
    // Longest occurrence-free stretch: from p[g] forward to p[g+1].
    std::size_t g = 0;
    std::size_t longest = 0;
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t gap = k == 1 ? n : (p[(j + 1) % k] + n - p[j]) % n;
        if (gap > longest) {
            longest = gap;
            g = j;
        }
    }
    // Unroll from the occurrence right after the gap; u.back() is the one before it.
    const std::size_t b = p[(g + 1) % k];
    std::vector<std::size_t> u(k);
    for (std::size_t i = 0; i < k; ++i) {
        u[i] = (p[(g + 1 + i) % k] + n - b) % n;
    }
    const std::size_t span_len = u.back();
    std::size_t jb = 0;  // farthest occurrence within t of b
    while (jb + 1 < k && u[jb + 1] < t) {
        ++jb;
    }
    std::size_t ia = k - 1;  // farthest occurrence within t of the pre-gap one, going back
    while (ia > 0 && span_len - u[ia - 1] < t) {
        --ia;
    }
    auto interval = [&](std::size_t from, std::size_t to) {
        return CircularInterval{(b + u[from]) % n, u[to] - u[from], false};
    };
    if (jb == k - 1) {
        cover.intervals[0] = interval(0, k - 1);
        return cover;
    }
    if (ia <= jb + 1) {
        cover.intervals[0] = interval(0, jb);
        cover.intervals[1] = interval(ia, k - 1);
        return cover;
    }
    const std::size_t d = jb + 1;
    const std::size_t c = ia - 1;
    if (u[c] - u[d] < t) {
        cover.intervals[0] = interval(0, jb);
        cover.intervals[1] = interval(d, c);
        cover.intervals[2] = interval(ia, k - 1);
        return cover;
    }
    // The construction only closes for small alpha relative to n; fall back
    // to the exact cover search.
    const std::size_t max_len = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(n)));
    CoverPlan plan = greedy_cover(p, n, max_len, true);
    if (plan.count > 3) {
        return std::nullopt;
    }
    cover.constructive = false;
    for (std::size_t i = 0; i < plan.intervals.size(); ++i) {
        cover.intervals[i] = plan.intervals[i];
    }
    return cover;
}

std::optional<ThreeIntervalCover> three_interval_cover(const WitnessList& q, int color, double alpha) {
    return three_interval_cover(q.occurrences(color), q.size(), alpha);
}

std::size_t min_interval_cover(std::span<const std::size_t> positions, std::size_t n, std::size_t max_length,
                               bool circular) {
    return greedy_cover(positions, n, max_length, circular).count;
}

void validate_quadruple(const SeparatorQuadruple& quad, std::size_t n) {
    const auto& i = quad.idx;
    if (!(i[0] < i[1] && i[1] < i[2] && i[2] < i[3] && i[3] < n)) {
        throw PierceError(ErrorKind::Argument, "separator quadruple must be strictly increasing within [0, N)");
    }
}

bool quadruple_pierces(std::span<const std::size_t> positions, std::size_t n, const SeparatorQuadruple& quad) {
    validate_quadruple(quad, n);
    const auto& i = quad.idx;
    return any_in(positions, i[0], i[1]) && any_in(positions, i[1], i[2]) && any_in(positions, i[2], i[3]) &&
           (any_in(positions, i[3], n) || any_in(positions, 0, i[0]));
}

bool quadruple_pierces(const WitnessList& q, const SeparatorQuadruple& quad, int color) {
    return quadruple_pierces(q.occurrences(color), q.size(), quad);
}

std::vector<double> separator_angles(const WitnessList& q) {
    const std::size_t n = q.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double prev = q[(i + n - 1) % n].angle;
        const double cur = q[i].angle;
        double gap = cur - prev;
        if (i == 0) {
            gap += kTwoPi;
        }
        out[i] = gap <= 0.0 ? cur : normalize_angle(prev + 0.5 * gap);
    }
    return out;
}

namespace {

Point2 chord_crossing(const std::array<Point2, 4>& y, double tol) {
    bool all_close = true;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            all_close = all_close && norm(y[i] - y[j]) <= tol;
        }
    }
    if (all_close) {
        throw PierceError(ErrorKind::DegenerateQuadruple, "all four separators coincide");
    }
    if (auto z = segment_intersection(y[0], y[2], y[1], y[3], tol)) {
        return *z;
    }
    if (norm(y[1] - y[3]) <= tol) {
        return y[1];
    }
    if (norm(y[0] - y[2]) <= tol) {
        return y[0];
    }
    // Both diagonals are the same chord.
    return 0.5 * (y[0] + y[2]);
}

}  // namespace

Point2 piercing_point(const CurveModel& curve, const WitnessList& q, const SeparatorQuadruple& quad, double tol) {
    if (q.size() < 4) {
        throw PierceError(ErrorKind::InsufficientWitnesses, "need at least four witness points");
    }
    validate_quadruple(quad, q.size());
    const auto angles = separator_angles(q);
    std::array<Point2, 4> y;
    for (std::size_t i = 0; i < 4; ++i) {
        y[i] = curve.point_at(angles[quad.idx[i]]);
    }
    return chord_crossing(y, tol);
}

unsigned __int128 piercing_quadruple_count(std::span<const std::size_t> p, std::size_t n) {
    const std::size_t k = p.size();
    if (k < 4) {
        return 0;
    }
    // e[j] = elementary symmetric polynomial of degree j of the gaps seen so far.
    std::array<unsigned __int128, 5> e{1, 0, 0, 0, 0};
    for (std::size_t j = 0; j < k; ++j) {
        const unsigned __int128 gap = (p[(j + 1) % k] + n - p[j]) % n;
        for (std::size_t d = 4; d >= 1; --d) {
            e[d] += e[d - 1] * gap;
        }
    }
    return e[4];
}

QuadrupleMean expected_pierced(const WitnessList& q) {
    const unsigned __int128 n = q.size();
    if (n < 4) {
        return {};
    }
    const unsigned __int128 quads = n * (n - 1) * (n - 2) * (n - 3) / 24;
    unsigned __int128 total = 0;
    for (int c = 0; c < q.colors(); ++c) {
        total += piercing_quadruple_count(q.occurrences(c), q.size());
    }
    QuadrupleMean out;
    out.mean = static_cast<double>(static_cast<long double>(total) / static_cast<long double>(quads));
    out.ceiling = static_cast<std::int64_t>((total + quads - 1) / quads);
    return out;
}

HeavyPoint find_heavy_point(const WitnessList& q, std::span<const ConvexBody> bodies, const CurveModel& curve,
                            const SearchStrategy& strategy, double alpha, double tol) {
    check_alpha(alpha);
    const std::size_t n = q.size();
    if (n < 4) {
        throw PierceError(ErrorKind::InsufficientWitnesses,
                          "need at least four witness points, have " + std::to_string(n));
    }
    std::vector<int> eligible;
    for (int c = 0; c < q.colors(); ++c) {
        if (q.occurrences(c).size() >= 4) {
            eligible.push_back(c);
        }
    }
    const auto angles = separator_angles(q);
    std::vector<Point2> seps(n);
    for (std::size_t i = 0; i < n; ++i) {
        seps[i] = curve.point_at(angles[i]);
    }

    HeavyPoint best;
    best.pierced = -1;
    auto evaluate = [&](const SeparatorQuadruple& quad) {
        ++best.evaluated;
        int pierced = 0;
        for (int c : eligible) {
            pierced += quadruple_pierces(q.occurrences(c), n, quad) ? 1 : 0;
        }
        if (pierced <= best.pierced) {
            return;
        }
        std::array<Point2, 4> y{seps[quad.idx[0]], seps[quad.idx[1]], seps[quad.idx[2]], seps[quad.idx[3]]};
        try {
            best.z = chord_crossing(y, tol);
        } catch (const PierceError& e) {
            if (e.kind() != ErrorKind::DegenerateQuadruple) {
                throw;
            }
            return;
        }
        best.pierced = pierced;
        best.quad = quad;
    };

    if (strategy.kind == SearchStrategy::Kind::Exhaustive && n <= kExhaustiveLimit) {
        best.exhaustive = true;
        SeparatorQuadruple quad;
        auto& i = quad.idx;
        for (i[0] = 0; i[0] < n; ++i[0]) {
            for (i[1] = i[0] + 1; i[1] < n; ++i[1]) {
                for (i[2] = i[1] + 1; i[2] < n; ++i[2]) {
                    for (i[3] = i[2] + 1; i[3] < n; ++i[3]) {
                        evaluate(quad);
                    }
                }
            }
        }
    } else {
        if (strategy.trials < 1) {
            throw PierceError(ErrorKind::Argument, "random strategy needs at least one trial");
        }
        std::mt19937_64 rng(strategy.seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::size_t t = 0; t < strategy.trials; ++t) {
            SeparatorQuadruple quad;
            auto& i = quad.idx;
            do {
                for (auto& v : i) {
                    v = pick(rng);
                }
                std::sort(i.begin(), i.end());
            } while (i[0] == i[1] || i[1] == i[2] || i[2] == i[3]);
            evaluate(quad);
        }
    }

    if (!best.quad) {
        best.fallback = true;
        best.pierced = 0;
        best.z = curve.point_at(q[0].angle);
    }
    for (const auto& body : bodies) {
        best.covered += body_contains(body, best.z, tol) ? 1 : 0;
    }
    for (int c = 0; c < q.colors(); ++c) {
        best.spread_out += is_spread_out(q, c, alpha) ? 1 : 0;
    }
    return best;
}

double case_a_constant(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0 / 3.0)) {
        throw PierceError(ErrorKind::Argument, "alpha must lie in (0, 1/3)");
    }
    return 24.0 * alpha * alpha * alpha * (1.0 - 3.0 * alpha) * (1.0 - 3.0 * std::sqrt(3.0 * alpha));
}

double not_spread_fraction_bound(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw PierceError(ErrorKind::Argument, "gamma must lie in (0, 1)");
    }
    return (1.0 - gamma / 2.0) / (1.0 - 3.0 * gamma / 20.0);
}

}  // namespace pierce
