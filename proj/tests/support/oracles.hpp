#pragma once

// Test-only generators and brute-force oracles. Nothing here calls into the
// enumeration or Kruskal code under test.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "oppcost/graph.hpp"

namespace oppcost::testing {

inline const char* kPaperGraph =
    "c e 8\na d 5\nf h 4\na c 3\na b 2\nb f 2\nd g 2\ne h 2\ng h 1\n";

inline std::string vertex_name(std::size_t i) { return std::string(1, static_cast<char>('a' + i)); }

/// Erdos-Renyi style graph on vertices a, b, ... with integer weights in [0, max_weight].
inline Graph random_graph(std::mt19937& rng, std::size_t n, double edge_prob, int max_weight = 9) {
    std::bernoulli_distribution keep(edge_prob);
    std::uniform_int_distribution<int> weight(0, max_weight);
    std::vector<Label> vertices;
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) vertices.push_back(vertex_name(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (keep(rng)) edges.push_back({vertex_name(i), vertex_name(j), double(weight(rng))});
    return Graph(vertices, edges);
}

/// Connected graph with pairwise distinct weights 1..m: a random spanning tree
/// plus random extra edges, weights assigned by a random permutation.
inline Graph random_connected_distinct(std::mt19937& rng, std::size_t n, double extra_prob) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
    for (std::size_t i = 1; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> parent(0, i - 1);
        const auto p = parent(rng);
        pairs.emplace_back(p, i);
        used[p][i] = used[i][p] = true;
    }
    std::bernoulli_distribution extra(extra_prob);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!used[i][j] && extra(rng)) pairs.emplace_back(i, j);

    std::vector<int> weights(pairs.size());
    std::iota(weights.begin(), weights.end(), 1);
    std::shuffle(weights.begin(), weights.end(), rng);
    std::vector<Edge> edges;
    std::vector<Label> vertices;
    for (std::size_t i = 0; i < n; ++i) vertices.push_back(vertex_name(i));
    for (std::size_t k = 0; k < pairs.size(); ++k)
        edges.push_back({vertex_name(pairs[k].first), vertex_name(pairs[k].second), double(weights[k])});
    return Graph(vertices, edges);
}

/// Dense weight matrix built from the edge list; NaN marks a missing edge.
inline std::vector<std::vector<double>> weight_matrix(const Graph& g) {
    const auto n = g.vertex_count();
    std::vector<std::vector<double>> w(n, std::vector<double>(n, std::numeric_limits<double>::quiet_NaN()));
    for (const auto& e : g.edges()) {
        const auto& labels = g.labels();
        const auto i = std::find(labels.begin(), labels.end(), e.u) - labels.begin();
        const auto j = std::find(labels.begin(), labels.end(), e.v) - labels.begin();
        w[i][j] = w[j][i] = e.weight;
    }
    return w;
}

/// Every simple s-t path found by bitmask recursion over the weight matrix,
/// as (vertex label sequence, utility).
struct BrutePath {
    std::vector<Label> vertices;
    double utility;
};

inline void brute_paths_rec(const std::vector<std::vector<double>>& w, const std::vector<Label>& labels,
                            std::size_t here, std::size_t target, unsigned mask, std::vector<std::size_t>& stack,
                            double u, std::vector<BrutePath>& out) {
    if (here == target) {
        BrutePath p{{}, u};
        for (auto i : stack) p.vertices.push_back(labels[i]);
        out.push_back(std::move(p));
        return;
    }
    for (std::size_t next = 0; next < w.size(); ++next) {
        if (std::isnan(w[here][next]) || (mask >> next & 1u)) continue;
        stack.push_back(next);
        brute_paths_rec(w, labels, next, target, mask | (1u << next), stack, u + w[here][next], out);
        stack.pop_back();
    }
}

inline std::vector<BrutePath> brute_paths(const Graph& g, const Label& s, const Label& t) {
    const auto w = weight_matrix(g);
    const auto& labels = g.labels();
    const auto si = std::find(labels.begin(), labels.end(), s) - labels.begin();
    const auto ti = std::find(labels.begin(), labels.end(), t) - labels.begin();
    std::vector<BrutePath> out;
    std::vector<std::size_t> stack{std::size_t(si)};
    brute_paths_rec(w, labels, si, ti, 1u << si, stack, 0.0, out);
    return out;
}

/// Best utility over all simple s-t paths, or -inf when none exists.
inline double brute_best_utility(const Graph& g, const Label& s, const Label& t) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : brute_paths(g, s, t)) best = std::max(best, p.utility);
    return best;
}

/// Myopic walk re-implemented over the weight matrix; -inf when it gets stuck.
inline double brute_greedy_utility(const Graph& g, const Label& s, const Label& t) {
    const auto w = weight_matrix(g);
    const auto& labels = g.labels();
    std::size_t here = std::find(labels.begin(), labels.end(), s) - labels.begin();
    const std::size_t target = std::find(labels.begin(), labels.end(), t) - labels.begin();
    std::vector<bool> seen(w.size(), false);
    seen[here] = true;
    double u = 0.0;
    while (here != target) {
        std::size_t pick = w.size();
        for (std::size_t j = 0; j < w.size(); ++j)
            if (!std::isnan(w[here][j]) && !seen[j] && (pick == w.size() || w[here][j] > w[here][pick])) pick = j;
        if (pick == w.size()) return -std::numeric_limits<double>::infinity();
        u += w[here][pick];
        seen[pick] = true;
        here = pick;
    }
    return u;
}

}  // namespace oppcost::testing
