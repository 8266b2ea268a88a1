#include "pierce/meet_graph.hpp"

#include <algorithm>
#include <string>

#include <boost/dynamic_bitset.hpp>

#include "pierce/error.hpp"

namespace pierce {

ColorGraph::ColorGraph(int n) : n_(n) {
    if (n < 0) {
        throw PierceError(ErrorKind::Argument, "negative vertex count");
    }
    adj_.resize(static_cast<std::size_t>(n));
    matrix_.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
}

void ColorGraph::add_edge(int u, int v) {
    if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) {
        throw PierceError(ErrorKind::Argument, "invalid edge");
    }
    const auto su = static_cast<std::size_t>(u);
    const auto sv = static_cast<std::size_t>(v);
    if (matrix_[su][sv]) {
        return;
    }
    matrix_[su][sv] = matrix_[sv][su] = true;
    adj_[su].push_back(v);
    adj_[sv].push_back(u);
    ++edges_;
}

bool ColorGraph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) {
        return false;
    }
    return matrix_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
}

std::vector<std::pair<int, int>> ColorGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u) {
        for (int v : adj_[static_cast<std::size_t>(u)]) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ColorGraph ColorGraph::complement() const {
    ColorGraph g(n_);
    for (int u = 0; u < n_; ++u) {
        for (int v = u + 1; v < n_; ++v) {
            if (!has_edge(u, v)) {
                g.add_edge(u, v);
            }
        }
    }
    return g;
}

ColorGraph build_meet_graph(std::span<const ConvexBody> bodies, const CurveModel& curve, double tol) {
    const int n = static_cast<int>(bodies.size());
    std::vector<std::vector<AngularInterval>> arcs;
    arcs.reserve(bodies.size());
    for (const auto& b : bodies) {
        arcs.push_back(body_curve_arcs(b, curve, tol));
    }
    ColorGraph g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (arcs_common_point(arcs[static_cast<std::size_t>(i)], arcs[static_cast<std::size_t>(j)], tol)) {
                g.add_edge(i, j);
            }
        }
    }
    return g;
}

namespace {

using Bits = boost::dynamic_bitset<>;

// Maximum clique of `h` (here: the complement of the meet graph) with greedy
// coloring bounds.
struct CliqueSearch {
    std::vector<Bits> adj;
    std::vector<int> current;
    std::vector<int> best;
    std::size_t nodes = 0;
    std::size_t budget = 0;
    bool exhausted = false;

    void expand(Bits candidates) {
        if (++nodes > budget) {
            exhausted = true;
            return;
        }
        std::vector<int> order;
        std::vector<int> color;
        Bits uncolored = candidates;
        int k = 0;
        while (uncolored.any()) {
            ++k;
            Bits q = uncolored;
            while (q.any()) {
                const auto v = q.find_first();
                q -= adj[v];
                q.reset(v);
                uncolored.reset(v);
                order.push_back(static_cast<int>(v));
                color.push_back(k);
            }
        }
        for (std::size_t i = order.size(); i-- > 0;) {
            if (exhausted || current.size() + static_cast<std::size_t>(color[i]) <= best.size()) {
                return;
            }
            const auto v = static_cast<std::size_t>(order[i]);
            current.push_back(order[i]);
            Bits next = candidates & adj[v];
            if (next.none()) {
                if (current.size() > best.size()) {
                    best = current;
                }
            } else {
                expand(next);
            }
            current.pop_back();
            candidates.reset(v);
        }
    }
};

}  // namespace

P2Result check_p2(const ColorGraph& graph, int p, std::size_t node_budget) {
    if (p < 2) {
        throw PierceError(ErrorKind::Argument, "p must be at least 2");
    }
    const int n = graph.size();
    P2Result out;
    if (n < p) {
        out.status = P2Status::Holds;
    }
    if (n == 0) {
        return out;
    }
    CliqueSearch search;
    search.budget = node_budget;
    search.adj.assign(static_cast<std::size_t>(n), Bits(static_cast<std::size_t>(n)));
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u != v && !graph.has_edge(u, v)) {
                search.adj[static_cast<std::size_t>(u)].set(static_cast<std::size_t>(v));
            }
        }
    }
    Bits all(static_cast<std::size_t>(n));
    all.set();
    search.expand(all);
    out.witness = search.best;
    std::sort(out.witness.begin(), out.witness.end());
    out.independence_number = static_cast<int>(search.best.size());
    if (n < p) {
        return out;
    }
    if (out.independence_number >= p) {
        out.status = P2Status::Violated;
    } else {
        out.status = search.exhausted ? P2Status::Unchecked : P2Status::Holds;
    }
    return out;
}

bool verify_p2(const ColorGraph& graph, int p) { return check_p2(graph, p).status == P2Status::Holds; }

TuranCheck turan_pair_check(const ColorGraph& graph, int p) {
    const P2Result r = check_p2(graph, p);
    if (r.status == P2Status::Violated) {
        throw PierceError(ErrorKind::ConditionNotSatisfied,
                          "found " + std::to_string(r.independence_number) +
                              " pairwise non-meeting elements with p = " + std::to_string(p));
    }
    const double n = graph.size();
    TuranCheck out;
    out.meets = graph.edge_count();
    out.bound = n * n / (2.0 * p);
    out.ok = static_cast<double>(out.meets) >= out.bound;
    const double turan_max_missing = p == 2 ? 0.0 : (1.0 - 1.0 / (p - 1)) * n * n / 2.0;
    out.exact_bound = n * (n - 1) / 2.0 - turan_max_missing;
    out.exact_ok = static_cast<double>(out.meets) >= out.exact_bound - 1e-9;
    return out;
}

long long neighbor_degree_sum(const ColorGraph& graph, int v) {
    long long g = 0;
    for (int w : graph.neighbors(v)) {
        g += graph.degree(w);
    }
    return g;
}

NeighborDegreeSum max_neighbor_degree_sum(const ColorGraph& graph) {
    if (graph.size() < 1) {
        throw PierceError(ErrorKind::Argument, "graph has no vertices");
    }
    NeighborDegreeSum best{0, neighbor_degree_sum(graph, 0)};
    for (int v = 1; v < graph.size(); ++v) {
        const long long g = neighbor_degree_sum(graph, v);
        if (g > best.g) {
            best = {v, g};
        }
    }
    return best;
}

}  // namespace pierce
