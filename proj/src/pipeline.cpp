#include "pierce/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include <boost/dynamic_bitset.hpp>

#include "pierce/error.hpp"
#include "pierce/meet_graph.hpp"

namespace pierce {

namespace {

struct Incidence {
    std::vector<Point2> points;              // maximal candidates
    std::vector<std::vector<int>> members;   // bodies containing each
};

Incidence maximal_incidence(std::span<const ConvexBody> bodies, std::span<const Point2> candidates, double tol) {
    auto members = membership(bodies, candidates, tol);
    const auto keep = maximal_points(members);
    Incidence inc;
    std::vector<bool> hit(bodies.size(), false);
    for (std::size_t k : keep) {
        inc.points.push_back(candidates[k]);
        for (int b : members[k]) {
            hit[static_cast<std::size_t>(b)] = true;
        }
        inc.members.push_back(std::move(members[k]));
    }
    for (std::size_t b = 0; b < bodies.size(); ++b) {
        if (!hit[b]) {
            throw PierceError(ErrorKind::IncompleteCandidates,
                              "body " + std::to_string(bodies[b].id) + " contains no candidate point");
        }
    }
    return inc;
}

std::pair<std::int64_t, std::int64_t> best_rational(double w, std::int64_t qmax) {
    if (w <= 0.0) {
        return {0, 1};
    }
    if (w >= 1.0) {
        return {1, 1};
    }
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    long double x = w;
    for (int iter = 0; iter < 64; ++iter) {
        const auto a = static_cast<std::int64_t>(std::floor(x));
        const std::int64_t h2 = a * h1 + h0;
        const std::int64_t k2 = a * k1 + k0;
        if (k2 > qmax) {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (std::abs(static_cast<long double>(w) - static_cast<long double>(h1) / k1) <= 1e-9L) {
            break;
        }
        const long double frac = x - a;
        if (frac < 1e-15L) {
            break;
        }
        x = 1.0L / frac;
    }
    if (k1 == 0) {
        return {0, 1};
    }
    return {h1, k1};
}

class StageTimer {
public:
    StageTimer(std::vector<StageRecord>& log, std::string name) : log_(log), start_(Clock::now()) {
        log_.push_back({std::move(name), 0.0, {}});
        index_ = log_.size() - 1;
    }
    ~StageTimer() { log_[index_].seconds = std::chrono::duration<double>(Clock::now() - start_).count(); }
    void stat(std::string key, double value) { log_[index_].stats.emplace_back(std::move(key), value); }

    StageTimer(const StageTimer&) = delete;
    StageTimer& operator=(const StageTimer&) = delete;

private:
    using Clock = std::chrono::steady_clock;
    std::vector<StageRecord>& log_;
    std::size_t index_ = 0;
    Clock::time_point start_;
};

template <typename F>
auto tagged(const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const PierceError& e) {
        if (!e.stage().empty()) {
            throw;
        }
        throw PierceError(e.kind(), e.what(), stage);
    }
}

}  // namespace

FractionalTransversal fractional_transversal(std::span<const ConvexBody> bodies, std::span<const Point2> candidates,
                                             double tol) {
    FractionalTransversal ft;
    if (bodies.empty()) {
        return ft;
    }
    const Incidence inc = maximal_incidence(bodies, candidates, tol);
    const std::size_t k = inc.points.size();
    LPProblem lp;
    lp.direction = Direction::Minimize;
    lp.objective.assign(k, 1.0);
    lp.rows.assign(bodies.size(), std::vector<double>(k, 0.0));
    lp.senses.assign(bodies.size(), Sense::GreaterEqual);
    lp.rhs.assign(bodies.size(), 1.0);
    for (std::size_t x = 0; x < k; ++x) {
        for (int b : inc.members[x]) {
            lp.rows[static_cast<std::size_t>(b)][x] = 1.0;
        }
    }
    const LPSolution sol = lp_solve(lp);
    if (sol.status != LPStatus::Optimal) {
        throw PierceError(ErrorKind::IncompleteCandidates, "transversal LP did not reach an optimum");
    }
    for (std::size_t x = 0; x < k; ++x) {
        const double w = std::clamp(sol.values[x], 0.0, 1.0);
        if (w > 1e-12) {
            ft.points.push_back(inc.points[x]);
            ft.weights.push_back(w);
            ft.size += w;
        }
    }
    return ft;
}

FractionalPacking fractional_packing(std::span<const ConvexBody> bodies, std::span<const Point2> candidates,
                                     double tol) {
    FractionalPacking fp;
    const std::size_t n = bodies.size();
    if (n == 0) {
        return fp;
    }
    const Incidence inc = maximal_incidence(bodies, candidates, tol);
    const std::size_t k = inc.points.size();

    // Start from the deepest candidates, then add violated constraints in batches.
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return inc.members[a].size() > inc.members[b].size();
    });
    const std::size_t batch = 2 * n + 10;
    std::vector<bool> active(k, false);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < std::min(batch, k); ++i) {
        active[order[i]] = true;
        rows.push_back(order[i]);
    }
    for (;;) {
        ++fp.rounds;
        LPProblem lp;
        lp.direction = Direction::Maximize;
        lp.objective.assign(n, 1.0);
        for (std::size_t x : rows) {
            std::vector<double> row(n, 0.0);
            for (int b : inc.members[x]) {
                row[static_cast<std::size_t>(b)] = 1.0;
            }
            lp.rows.push_back(std::move(row));
            lp.senses.push_back(Sense::LessEqual);
            lp.rhs.push_back(1.0);
        }
        const LPSolution sol = lp_solve(lp);
        if (sol.status != LPStatus::Optimal) {
            throw PierceError(ErrorKind::IncompleteCandidates, "packing LP did not reach an optimum");
        }
        std::vector<std::pair<double, std::size_t>> violated;
        for (std::size_t x = 0; x < k; ++x) {
            if (active[x]) {
                continue;
            }
            double load = 0.0;
            for (int b : inc.members[x]) {
                load += sol.values[static_cast<std::size_t>(b)];
            }
            if (load > 1.0 + 1e-9) {
                violated.emplace_back(load, x);
            }
        }
        if (violated.empty()) {
            fp.weights.resize(n);
            fp.size = 0.0;
            for (std::size_t b = 0; b < n; ++b) {
                fp.weights[b] = std::clamp(sol.values[b], 0.0, 1.0);
                fp.size += fp.weights[b];
            }
            return fp;
        }
        std::sort(violated.begin(), violated.end(), std::greater<>());
        for (std::size_t i = 0; i < std::min(batch, violated.size()); ++i) {
            active[violated[i].second] = true;
            rows.push_back(violated[i].second);
        }
    }
}

RationalWeights rationalize(std::span<const double> weights, std::int64_t max_denominator) {
    if (max_denominator < 1) {
        throw PierceError(ErrorKind::Argument, "max_denominator must be at least 1");
    }
    RationalWeights rw;
    std::vector<std::pair<std::int64_t, std::int64_t>> fracs;
    std::int64_t lcm = 1;
    bool fits = true;
    for (double w : weights) {
        if (!(w >= -1e-9 && w <= 1.0 + 1e-9)) {
            throw PierceError(ErrorKind::Argument, "weights must lie in [0, 1]");
        }
        const auto f = best_rational(std::clamp(w, 0.0, 1.0), max_denominator);
        fracs.push_back(f);
        if (fits) {
            const std::int64_t next = std::lcm(lcm, f.second);
            if (next > max_denominator) {
                fits = false;
            } else {
                lcm = next;
            }
        }
    }
    if (fits) {
        rw.denominator = lcm;
        for (const auto& [num, den] : fracs) {
            rw.m.push_back(num * (lcm / den));
        }
    } else {
        rw.denominator = max_denominator;
        for (double w : weights) {
            rw.m.push_back(static_cast<std::int64_t>(std::floor(std::clamp(w, 0.0, 1.0) * max_denominator)));
        }
    }
    std::int64_t g = rw.denominator;
    for (std::int64_t v : rw.m) {
        g = std::gcd(g, v);
    }
    if (g > 1) {
        rw.denominator /= g;
        for (auto& v : rw.m) {
            v /= g;
        }
    }
    return rw;
}

std::size_t enforce_packing(RationalWeights& rw, const std::vector<std::vector<int>>& members) {
    std::size_t decrements = 0;
    for (const auto& set : members) {
        std::int64_t load = 0;
        for (int b : set) {
            load += rw.m[static_cast<std::size_t>(b)];
        }
        while (load > rw.denominator) {
            const auto it = std::max_element(set.begin(), set.end(), [&](int a, int b) {
                return rw.m[static_cast<std::size_t>(a)] < rw.m[static_cast<std::size_t>(b)];
            });
            --rw.m[static_cast<std::size_t>(*it)];
            --load;
            ++decrements;
        }
    }
    return decrements;
}

bool packing_holds(const RationalWeights& rw, const std::vector<std::vector<int>>& members) {
    return std::all_of(members.begin(), members.end(), [&](const std::vector<int>& set) {
        std::int64_t load = 0;
        for (int b : set) {
            load += rw.m[static_cast<std::size_t>(b)];
        }
        return load <= rw.denominator;
    });
}

Multiset replicate(std::span<const ConvexBody> bodies, std::span<const std::int64_t> m) {
    if (m.size() != bodies.size()) {
        throw PierceError(ErrorKind::Argument, "one multiplicity per body required");
    }
    Multiset out;
    for (std::size_t i = 0; i < bodies.size(); ++i) {
        if (m[i] < 0) {
            throw PierceError(ErrorKind::Argument, "negative multiplicity");
        }
        for (std::int64_t c = 0; c < m[i]; ++c) {
            ConvexBody copy = bodies[i];
            copy.id = static_cast<int>(out.bodies.size());
            out.bodies.push_back(std::move(copy));
            out.source.push_back(static_cast<int>(i));
        }
    }
    if (out.bodies.empty()) {
        throw PierceError(ErrorKind::EmptyMultiset, "all multiplicities are zero");
    }
    return out;
}

std::vector<Point2> cloud_expand(const FractionalTransversal& ft, int resolution, double cloud_eps) {
    if (resolution < 1) {
        throw PierceError(ErrorKind::Argument, "cloud resolution must be at least 1");
    }
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    std::vector<Point2> out;
    for (std::size_t i = 0; i < ft.points.size(); ++i) {
        const auto copies = static_cast<long>(std::lround(resolution * ft.weights[i]));
        for (long c = 0; c < copies; ++c) {
            const double r = cloud_eps * std::sqrt((c + 0.5) / static_cast<double>(copies));
            const double a = golden * static_cast<double>(c);
            out.push_back(ft.points[i] + Point2{r * std::cos(a), r * std::sin(a)});
        }
    }
    return out;
}

std::vector<Point2> greedy_transversal(std::span<const ConvexBody> bodies, std::span<const Point2> candidates,
                                       double tol) {
    if (bodies.empty()) {
        return {};
    }
    const Incidence inc = maximal_incidence(bodies, candidates, tol);
    boost::dynamic_bitset<> unhit(bodies.size());
    unhit.set();
    std::vector<Point2> out;
    while (unhit.any()) {
        std::size_t best = 0;
        std::size_t best_gain = 0;
        for (std::size_t x = 0; x < inc.points.size(); ++x) {
            std::size_t gain = 0;
            for (int b : inc.members[x]) {
                gain += unhit.test(static_cast<std::size_t>(b)) ? 1 : 0;
            }
            if (gain > best_gain) {
                best_gain = gain;
                best = x;
            }
        }
        out.push_back(inc.points[best]);
        for (int b : inc.members[best]) {
            unhit.reset(static_cast<std::size_t>(b));
        }
    }
    return out;
}

double default_alpha(double gamma) { return gamma >= 1.0 - 1e-12 ? 0.027 : std::max(gamma, 1e-9) / 300.0; }

TransversalReport run_pipeline(std::span<const ConvexBody> bodies, const CurveModel& curve, int p,
                               const PipelineConfig& config) {
    if (bodies.empty()) {
        throw PierceError(ErrorKind::Argument, "instance has no bodies", "input");
    }
    if (p < 2) {
        throw PierceError(ErrorKind::Argument, "p must be at least 2", "input");
    }
    const double tol = config.tol_geom;
    tagged("input", [&] {
        validate_curve(curve);
        for (const auto& b : bodies) {
            validate_body(b, tol);
        }
        return 0;
    });
    TransversalReport rep;
    rep.p = p;
    const std::size_t n = bodies.size();

    // (p,2) condition and bodies missing the curve.
    std::vector<std::size_t> on_curve;
    double gamma = 1.0;
    {
        StageTimer st(rep.stages, "precondition");
        const ColorGraph g = build_meet_graph(bodies, curve, tol);
        const P2Result r = check_p2(g, p);
        if (r.status == P2Status::Violated) {
            throw PierceError(ErrorKind::ConditionNotSatisfied,
                              std::to_string(r.independence_number) + " pairwise non-meeting bodies with p = " +
                                  std::to_string(p),
                              "precondition");
        }
        rep.flags.p2 = r.status == P2Status::Holds;
        for (std::size_t i = 0; i < n; ++i) {
            if (body_curve_arcs(bodies[i], curve, tol).empty()) {
                rep.filtered.push_back(static_cast<int>(i));
            } else {
                on_curve.push_back(i);
            }
        }
        rep.p_effective = rep.filtered.empty() ? p : std::max(2, p - 1);
        if (n >= 2) {
            gamma = static_cast<double>(g.edge_count()) / (static_cast<double>(n) * (n - 1) / 2.0);
        }
        rep.alpha = config.alpha.value_or(default_alpha(gamma));
        st.stat("meets", static_cast<double>(g.edge_count()));
        st.stat("gamma", gamma);
        st.stat("independence_number", r.independence_number);
        st.stat("p2_checked", r.status == P2Status::Unchecked ? 0.0 : 1.0);
    }

    std::vector<Point2> cands;
    std::vector<std::vector<int>> members;
    {
        StageTimer st(rep.stages, "candidates");
        cands = candidate_points(bodies, kNudgeEps, tol);
        members = membership(bodies, cands, tol);
        rep.candidates = cands.size();
        st.stat("count", static_cast<double>(cands.size()));
    }

    FractionalTransversal ft;
    FractionalPacking fp;
    {
        StageTimer st(rep.stages, "lp");
        ft = tagged("lp", [&] { return fractional_transversal(bodies, cands, tol); });
        fp = tagged("lp", [&] { return fractional_packing(bodies, cands, tol); });
        rep.tau_star = ft.size;
        rep.packing_size = fp.size;
        rep.flags.duality = std::abs(ft.size - fp.size) <= 1e-6;
        st.stat("transversal", ft.size);
        st.stat("packing", fp.size);
        st.stat("packing_rounds", static_cast<double>(fp.rounds));
    }

    RationalWeights rw;
    {
        StageTimer st(rep.stages, "rationalize");
        rw = tagged("rationalize", [&] { return rationalize(fp.weights, config.max_denominator); });
        std::size_t fixes = enforce_packing(rw, members);
        const std::int64_t total = std::accumulate(rw.m.begin(), rw.m.end(), std::int64_t{0});
        if (total > config.replication_cap) {
            // Too many copies for the quadratic witness list; use a coarser denominator.
            const auto smaller = std::max<std::int64_t>(
                1, static_cast<std::int64_t>(std::floor(static_cast<double>(config.replication_cap) /
                                                        std::max(fp.size, 1.0))));
            RationalWeights coarse;
            coarse.denominator = smaller;
            for (double w : fp.weights) {
                coarse.m.push_back(static_cast<std::int64_t>(std::floor(w * static_cast<double>(smaller))));
            }
            rw = std::move(coarse);
            fixes += enforce_packing(rw, members);
            st.stat("coarsened", 1.0);
        }
        rep.flags.packing_eq = packing_holds(rw, members);
        rep.m = rw.m;
        rep.denominator = rw.denominator;
        st.stat("denominator", static_cast<double>(rw.denominator));
        st.stat("repairs", static_cast<double>(fixes));
    }

    {
        StageTimer st(rep.stages, "heavy_point");
        std::vector<ConvexBody> on_bodies;
        std::vector<std::int64_t> on_m;
        for (std::size_t i : on_curve) {
            on_bodies.push_back(bodies[i]);
            on_m.push_back(rw.m[i]);
        }
        rep.multiset_size = std::accumulate(on_m.begin(), on_m.end(), std::int64_t{0});
        bool have_z = false;
        if (rep.multiset_size > 0) {
            const Multiset multi = replicate(on_bodies, on_m);
            // Witnesses for the multiset; copies of one body meet at that body's own curve point.
            std::vector<std::vector<AngularInterval>> arcs;
            for (const auto& b : on_bodies) {
                arcs.push_back(body_curve_arcs(b, curve, tol));
            }
            std::map<std::pair<int, int>, std::optional<double>> meet_cache;
            auto meet = [&](int s, int t) {
                const auto key = std::minmax(s, t);
                auto it = meet_cache.find(key);
                if (it == meet_cache.end()) {
                    it = meet_cache
                             .emplace(key, arcs_common_point(arcs[static_cast<std::size_t>(key.first)],
                                                             arcs[static_cast<std::size_t>(key.second)], tol))
                             .first;
                }
                return it->second;
            };
            std::vector<WitnessPoint> wps;
            const int size = static_cast<int>(multi.bodies.size());
            for (int i = 0; i < size; ++i) {
                for (int j = i + 1; j < size; ++j) {
                    if (auto a = meet(multi.source[static_cast<std::size_t>(i)], multi.source[static_cast<std::size_t>(j)])) {
                        wps.push_back({*a, i, j});
                    }
                }
            }
            const WitnessList q(std::move(wps), size);
            rep.witnesses = q.size();
            st.stat("witnesses", static_cast<double>(q.size()));
            if (q.size() >= 4) {
                SearchStrategy strategy{config.strategy, config.trials, config.seed};
                const HeavyPoint hp = tagged("heavy_point", [&] {
                    return find_heavy_point(q, multi.bodies, curve, strategy, rep.alpha, tol);
                });
                rep.z = hp.z;
                rep.pierced = hp.pierced;
                rep.heavy_fallback = hp.fallback;
                have_z = true;
                st.stat("pierced", hp.pierced);
                st.stat("spread_out", hp.spread_out);
                st.stat("evaluated", static_cast<double>(hp.evaluated));
                st.stat("exhaustive", hp.exhaustive ? 1.0 : 0.0);
                st.stat("mean_pierced", expected_pierced(q).mean);
            } else if (q.size() > 0) {
                rep.z = curve.point_at(q[0].angle);
                rep.heavy_fallback = true;
                have_z = true;
            }
        }
        if (!have_z) {
            // Too few witnesses: use the candidate carrying the most packing weight.
            std::size_t best = 0;
            std::int64_t best_load = -1;
            for (std::size_t x = 0; x < cands.size(); ++x) {
                std::int64_t load = 0;
                for (int b : members[x]) {
                    load += rw.m[static_cast<std::size_t>(b)];
                }
                if (load > best_load) {
                    best_load = load;
                    best = x;
                }
            }
            rep.z = cands.empty() ? Point2{} : cands[best];
            rep.heavy_fallback = true;
        }
        for (std::size_t i : on_curve) {
            if (body_contains(bodies[i], rep.z, tol)) {
                rep.coverage += rw.m[i];
            }
        }
        rep.flags.coverage_le_d = rep.coverage <= rw.denominator;
        if (rep.multiset_size > 0) {
            rep.epsilon = static_cast<double>(rep.coverage) / static_cast<double>(rep.multiset_size);
            const double tau_rational = static_cast<double>(rep.multiset_size) / static_cast<double>(rw.denominator);
            rep.flags.tau_eps = tau_rational * rep.epsilon <= 1.0 + 1e-12;
        } else {
            rep.flags.tau_eps = true;
        }
        st.stat("coverage", static_cast<double>(rep.coverage));
        st.stat("epsilon", rep.epsilon);
    }

    {
        StageTimer st(rep.stages, "cloud");
        const auto cloud = cloud_expand(ft, config.cloud_resolution);
        double min_fraction = 1.0;
        for (const auto& b : bodies) {
            std::size_t inside = 0;
            for (const Point2& c : cloud) {
                inside += body_contains(b, c, tol + 2.0 * kCloudEps) ? 1 : 0;
            }
            min_fraction = std::min(min_fraction, cloud.empty() ? 0.0 : static_cast<double>(inside) / cloud.size());
        }
        rep.cloud_min_fraction = min_fraction;
        rep.flags.cloud_fraction = min_fraction >= 1.0 / ft.size - 1.0 / config.cloud_resolution;
        st.stat("points", static_cast<double>(cloud.size()));
        st.stat("min_fraction", min_fraction);
    }

    {
        StageTimer st(rep.stages, "transversal");
        rep.transversal = tagged("transversal", [&] { return greedy_transversal(bodies, cands, tol); });
        rep.flags.all_hit = std::all_of(bodies.begin(), bodies.end(), [&](const ConvexBody& b) {
            return std::any_of(rep.transversal.begin(), rep.transversal.end(),
                               [&](Point2 x) { return body_contains(b, x, tol); });
        });
        rep.flags.greedy_bound =
            static_cast<double>(rep.transversal.size()) <= ft.size * (1.0 + std::log(static_cast<double>(n))) + 1.0;
        st.stat("size", static_cast<double>(rep.transversal.size()));
    }
    return rep;
}

}  // namespace pierce
