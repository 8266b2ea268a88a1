#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pierce/geometry.hpp"

namespace pierce {

// Simple undirected graph on colors [0, n).
class ColorGraph {
public:
    explicit ColorGraph(int n = 0);

    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    int size() const { return n_; }
    std::size_t edge_count() const { return edges_; }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    std::vector<std::pair<int, int>> edges() const;
    ColorGraph complement() const;

private:
    int n_ = 0;
    std::size_t edges_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<std::vector<bool>> matrix_;
};

// Edge iff the two bodies meet at a point of the curve.
ColorGraph build_meet_graph(std::span<const ConvexBody> bodies, const CurveModel& curve,
                            double tol = kTolGeom);

enum class P2Status { Holds, Violated, Unchecked };

struct P2Result {
    P2Status status = P2Status::Unchecked;
    int independence_number = 0;  // exact when status != Unchecked
    std::vector<int> witness;     // a largest independent set found
};

// Exact maximum independent set by branch and bound, stopped after `node_budget`.
P2Result check_p2(const ColorGraph& graph, int p, std::size_t node_budget = 20'000'000);

// True iff no p vertices are pairwise non-adjacent. Unchecked counts as false.
bool verify_p2(const ColorGraph& graph, int p);

struct TuranCheck {
    std::size_t meets = 0;
    double bound = 0.0;        // n^2 / (2p)
    bool ok = false;
    double exact_bound = 0.0;  // C(n,2) - (1 - 1/(p-1)) n^2 / 2, from Turan directly
    bool exact_ok = false;
};

// Throws PierceError(ConditionNotSatisfied) when the (p,2) condition is violated.
TuranCheck turan_pair_check(const ColorGraph& graph, int p);

struct NeighborDegreeSum {
    int vertex = 0;
    long long g = 0;
};

NeighborDegreeSum max_neighbor_degree_sum(const ColorGraph& graph);

long long neighbor_degree_sum(const ColorGraph& graph, int v);

}  // namespace pierce
