#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "oppcost/graph.hpp"

namespace oppcost {

/// Disjoint-set forest with union by rank and path compression.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        std::size_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) x = std::exchange(parent_[x], root);
        return root;
    }

    bool connected(std::size_t a, std::size_t b) { return find(a) == find(b); }

    /// Returns false when a and b were already in the same set.
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned> rank_;
};

/// Edge set kept in lexicographic (u, v) order.
struct SpanningTree {
    std::vector<Edge> edges;
    double total_weight = 0.0;

    friend bool operator==(const SpanningTree&, const SpanningTree&) = default;
};

enum class StepOutcome { Accepted, RejectedCycle };

inline std::string_view to_string(StepOutcome o) {
    return o == StepOutcome::Accepted ? "accepted" : "rejected-cycle";
}

struct KruskalStep {
    Edge considered;
    StepOutcome outcome = StepOutcome::Accepted;
    /// Unprocessed edges that would not close a cycle in the forest as it
    /// stood before this step.
    std::vector<Edge> feasible_alternatives;
    /// Heaviest feasible alternative; empty when there is none.
    std::optional<double> opportunity_cost;
};

struct KruskalTrace {
    std::vector<Edge> ordered_edges;
    std::vector<KruskalStep> steps;
};

struct KruskalResult {
    SpanningTree tree;
    KruskalTrace trace;
};

struct FirstChoiceCost {
    Edge edge;
    std::optional<double> opportunity_cost;
};

struct StepVerification {
    std::size_t step = 0;
    Edge chosen;
    std::optional<double> chosen_cost;
    /// Smallest opportunity cost any feasible alternative would have had.
    std::optional<double> best_alternative_cost;
    bool pass = true;
};

struct GreedyVerification {
    std::vector<StepVerification> steps;
    bool all_pass = true;
    std::string rationale;
};

inline constexpr std::size_t kMaxBruteForceEdges = 20;

namespace detail {

/// Descending weight; ties by (u, v).
inline std::vector<Edge> kruskal_order(const Graph& g) {
    auto edges = g.edges();
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return edge_label_less(a, b);
    });
    return edges;
}

inline void require_connected(const Graph& g) {
    if (g.vertex_count() == 0) throw InputError("graph has no vertices");
    UnionFind uf(g.vertex_count());
    for (const auto& e : g.edges()) uf.unite(*g.index_of(e.u), *g.index_of(e.v));
    for (std::size_t i = 1; i < g.vertex_count(); ++i)
        if (!uf.connected(0, i)) throw DisconnectedError(g.label(0), g.label(i));
}

inline SpanningTree make_tree(std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end(), edge_label_less);
    SpanningTree t;
    for (const auto& e : edges) t.total_weight += e.weight;
    t.edges = std::move(edges);
    return t;
}

}  // namespace detail

/// Kruskal's algorithm on descending weights, recording every step it takes
/// until the tree spans the graph.
inline KruskalResult kruskal_max_spanning_tree(const Graph& g) {
    detail::require_connected(g);

    KruskalResult result;
    auto& trace = result.trace;
    trace.ordered_edges = detail::kruskal_order(g);

    UnionFind forest(g.vertex_count());
    std::vector<Edge> accepted;
    const auto needed = g.vertex_count() - 1;
    for (std::size_t i = 0; i < trace.ordered_edges.size() && accepted.size() < needed; ++i) {
        const auto& e = trace.ordered_edges[i];
        KruskalStep step{e, StepOutcome::Accepted, {}, std::nullopt};
        for (std::size_t j = i + 1; j < trace.ordered_edges.size(); ++j) {
            const auto& alt = trace.ordered_edges[j];
            if (forest.connected(*g.index_of(alt.u), *g.index_of(alt.v))) continue;
            step.feasible_alternatives.push_back(alt);
            if (!step.opportunity_cost || alt.weight > *step.opportunity_cost) step.opportunity_cost = alt.weight;
        }
        if (forest.unite(*g.index_of(e.u), *g.index_of(e.v)))
            accepted.push_back(e);
        else
            step.outcome = StepOutcome::RejectedCycle;
        trace.steps.push_back(std::move(step));
    }
    result.tree = detail::make_tree(std::move(accepted));
    return result;
}

/// Opportunity cost of each edge taken as a hypothetical first pick: every
/// other edge is still feasible, so the cost is the heaviest of them. Listed
/// in Kruskal order.
inline std::vector<FirstChoiceCost> first_choice_opportunity_costs(const Graph& g) {
    const auto ordered = detail::kruskal_order(g);
    std::vector<FirstChoiceCost> out;
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        FirstChoiceCost c{ordered[i], std::nullopt};
        for (std::size_t j = 0; j < ordered.size(); ++j) {
            if (j == i) continue;
            if (!c.opportunity_cost || ordered[j].weight > *c.opportunity_cost) c.opportunity_cost = ordered[j].weight;
        }
        out.push_back(std::move(c));
    }
    return out;
}

/// Exhaustive maximum spanning tree over all (n-1)-edge subsets. Ties go to
/// the lexicographically smallest edge set.
inline SpanningTree brute_force_max_spanning_tree(const Graph& g, std::size_t max_edges = kMaxBruteForceEdges) {
    if (g.edge_count() > max_edges)
        throw TooLargeError("instance too large for exhaustive spanning-tree search: " +
                            std::to_string(g.edge_count()) + " edges exceeds limit of " + std::to_string(max_edges));
    detail::require_connected(g);

    auto edges = g.edges();
    std::sort(edges.begin(), edges.end(), edge_label_less);
    const auto k = g.vertex_count() - 1;
    const auto m = edges.size();

    std::optional<std::vector<std::size_t>> best;
    double best_weight = 0.0;
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
        UnionFind uf(g.vertex_count());
        bool acyclic = true;
        double w = 0.0;
        for (auto idx : pick) {
            acyclic = uf.unite(*g.index_of(edges[idx].u), *g.index_of(edges[idx].v));
            if (!acyclic) break;
            w += edges[idx].weight;
        }
        if (acyclic && (!best || w > best_weight)) {
            best = pick;
            best_weight = w;
        }

        // next k-combination of {0..m-1} in lexicographic order
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }

    std::vector<Edge> chosen;
    for (auto idx : *best) chosen.push_back(edges[idx]);
    return detail::make_tree(std::move(chosen));
}

/// Checks that at every accepted step the chosen edge's opportunity cost is no
/// larger than the cost any feasible alternative would have carried.
inline GreedyVerification verify_greedy_min_oppcost(const KruskalTrace& trace) {
    GreedyVerification report;
    report.rationale =
        "accepting an edge never removes a heavier edge from later consideration, "
        "so the heaviest feasible edge always forgoes the least";
    for (std::size_t s = 0; s < trace.steps.size(); ++s) {
        const auto& step = trace.steps[s];
        if (step.outcome != StepOutcome::Accepted) continue;

        std::vector<const Edge*> feasible{&step.considered};
        for (const auto& e : step.feasible_alternatives) feasible.push_back(&e);
        auto cost_without = [&](std::size_t skip) {
            std::optional<double> c;
            for (std::size_t i = 0; i < feasible.size(); ++i)
                if (i != skip && (!c || feasible[i]->weight > *c)) c = feasible[i]->weight;
            return c;
        };

        StepVerification v;
        v.step = s;
        v.chosen = step.considered;
        v.chosen_cost = cost_without(0);
        for (std::size_t i = 1; i < feasible.size(); ++i) {
            const auto c = cost_without(i);
            if (!v.best_alternative_cost || *c < *v.best_alternative_cost) v.best_alternative_cost = c;
        }
        v.pass = !v.best_alternative_cost || *v.chosen_cost <= *v.best_alternative_cost;
        report.all_pass = report.all_pass && v.pass;
        report.steps.push_back(std::move(v));
    }
    return report;
}

}  // namespace oppcost
