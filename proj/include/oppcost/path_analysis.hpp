#pragma once

#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oppcost/graph.hpp"

namespace oppcost {

/// A forgone first move together with the best total utility it could have led to.
struct ForgoneAlternative {
    Label to;
    double best_completion_utility = 0.0;
};

/// One choice at one decision point of the maximum-benefit path problem.
///
/// Utilities are totals over the whole s-t path, prefix included, so they are
/// directly comparable with the optimum.
struct DecisionAnalysis {
    Label from;
    Label to;
    double immediate_utility = 0.0;
    double best_completion_utility = 0.0;
    PathRecord best_completion;
    /// Best total utility among paths that do not take this edge; empty when
    /// no other choice at this point reaches the target.
    std::optional<double> opportunity_cost;
    bool is_greedy_choice = false;
    std::vector<ForgoneAlternative> forgone_alternatives;

    std::string choice_name() const { return from + "-" + to; }
};

/// Decision analyses at one point of a path under construction.
struct DecisionPoint {
    PathRecord prefix;
    std::vector<DecisionAnalysis> analyses;
};

enum class Verdict { GreedyAmenableOnInstance, RequiresDpOnInstance };

inline std::string_view to_string(Verdict v) {
    return v == Verdict::GreedyAmenableOnInstance ? "greedy-amenable-on-instance" : "requires-dp-on-instance";
}

struct ClassificationReport {
    Verdict verdict = Verdict::RequiresDpOnInstance;
    /// Empty when the greedy walk got stuck; `greedy_partial` then holds where it stopped.
    std::optional<PathRecord> greedy;
    std::vector<Label> greedy_partial;
    PathRecord optimal;
    /// -infinity when the greedy walk got stuck.
    double greedy_solution_utility = 0.0;
    double optimal_solution_utility = 0.0;
    /// +infinity when the greedy walk got stuck.
    double utility_gap = 0.0;
    std::vector<DecisionAnalysis> decisions;
    /// Extension: decision points after the first one, along the greedy walk.
    std::vector<DecisionPoint> later_decisions;
    std::string narrative;
};

namespace detail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

/// Index of the myopic pick at `here`: heaviest edge to an unvisited
/// neighbour, ties to the smallest label. Empty at a dead end.
inline std::optional<Graph::Adjacent> greedy_step(const Graph& g, std::size_t here,
                                                  const std::vector<char>& visited) {
    std::optional<Graph::Adjacent> best;
    for (const auto& n : g.neighbors(here)) {
        if (visited[n.vertex]) continue;
        if (!best || n.weight > best->weight) best = n;
    }
    return best;
}

}  // namespace detail

/// Myopic walk: always take the heaviest edge to an unvisited neighbour, never backtrack.
inline PathRecord greedy_path(const Graph& g, std::string_view s, std::string_view t) {
    detail::require_vertex(g, s);
    detail::require_vertex(g, t);
    const auto target = *g.index_of(t);
    std::vector<char> visited(g.vertex_count(), 0);
    std::vector<std::size_t> path{*g.index_of(s)};
    visited[path.back()] = 1;
    double utility = 0.0;

    while (path.back() != target) {
        const auto step = detail::greedy_step(g, path.back(), visited);
        if (!step) {
            auto partial = detail::to_record(g, path, utility);
            throw GreedyStuckError(partial.vertices, "greedy got stuck at '" + g.label(path.back()) +
                                                         "' after " + partial.to_string() +
                                                         " without reaching '" + std::string(t) + "'");
        }
        visited[step->vertex] = 1;
        path.push_back(step->vertex);
        utility += step->weight;
    }
    return detail::to_record(g, path, utility);
}

/// Maximum-utility simple s-t path by exhaustive enumeration; ties go to the
/// lexicographically smallest vertex sequence.
inline PathRecord optimal_path(const Graph& g, std::string_view s, std::string_view t,
                               std::size_t vertex_cap = kDefaultVertexCap) {
    const auto paths = enumerate_simple_paths(g, s, t, vertex_cap);
    if (paths.empty())
        throw NoPathError("no path from '" + std::string(s) + "' to '" + std::string(t) + "'");
    const PathRecord* best = &paths.front();
    for (const auto& p : paths)
        if (p.utility > best->utility) best = &p;
    return *best;
}

/// Opportunity cost of every move available after `prefix` (a simple path
/// starting at the source). Only moves that can still reach `t` are reported.
///
/// For the one-vertex prefix this is the first-decision analysis; for longer
/// prefixes it is the generalisation to later decision points, with every
/// utility measured over the full path from the source.
inline std::vector<DecisionAnalysis> decision_analyses_at(const Graph& g, std::span<const Label> prefix,
                                                          std::string_view t,
                                                          std::size_t vertex_cap = kDefaultVertexCap) {
    detail::require_vertex(g, t);
    detail::require_cap(g, vertex_cap);
    const double prefix_utility = path_utility(g, prefix);
    const auto target = *g.index_of(t);

    std::vector<std::size_t> path;
    std::vector<char> on_path(g.vertex_count(), 0);
    for (const auto& label : prefix) {
        path.push_back(*g.index_of(label));
        on_path[path.back()] = 1;
    }
    const auto here = path.back();
    if (here == target) return {};

    const auto greedy = detail::greedy_step(g, here, on_path);
    std::vector<DecisionAnalysis> out;
    for (const auto& n : g.neighbors(here)) {
        if (on_path[n.vertex]) continue;
        std::optional<PathRecord> best;
        on_path[n.vertex] = 1;
        path.push_back(n.vertex);
        detail::extend_simple_paths(g, target, path, on_path, prefix_utility + n.weight,
                                    [&](const std::vector<std::size_t>& p, double u) {
                                        if (!best || u > best->utility) best = detail::to_record(g, p, u);
                                    });
        path.pop_back();
        on_path[n.vertex] = 0;
        if (!best) continue;

        DecisionAnalysis a;
        a.from = g.label(here);
        a.to = g.label(n.vertex);
        a.immediate_utility = n.weight;
        a.best_completion_utility = best->utility;
        a.best_completion = std::move(*best);
        a.is_greedy_choice = greedy && greedy->vertex == n.vertex;
        out.push_back(std::move(a));
    }

    for (auto& a : out) {
        for (const auto& other : out) {
            if (&other == &a) continue;
            a.forgone_alternatives.push_back({other.to, other.best_completion_utility});
            if (!a.opportunity_cost || other.best_completion_utility > *a.opportunity_cost)
                a.opportunity_cost = other.best_completion_utility;
        }
    }
    return out;
}

/// Opportunity cost of each first edge out of `s`, in neighbour-label order.
inline std::vector<DecisionAnalysis> first_decision_analyses(const Graph& g, std::string_view s,
                                                             std::string_view t,
                                                             std::size_t vertex_cap = kDefaultVertexCap) {
    detail::require_vertex(g, s);
    const std::vector<Label> prefix{Label(s)};
    auto out = decision_analyses_at(g, prefix, t, vertex_cap);
    if (out.empty() && s != t)
        throw NoPathError("no path from '" + std::string(s) + "' to '" + std::string(t) + "'");
    return out;
}

namespace detail {

inline std::string render_narrative(const ClassificationReport& r) {
    std::string out;
    const DecisionAnalysis* greedy_choice = nullptr;
    const DecisionAnalysis* cheapest = nullptr;
    for (const auto& d : r.decisions) {
        if (d.is_greedy_choice) greedy_choice = &d;
        const double oc = d.opportunity_cost.value_or(-std::numeric_limits<double>::infinity());
        if (!cheapest || oc < cheapest->opportunity_cost.value_or(-std::numeric_limits<double>::infinity()))
            cheapest = &d;
    }

    if (!r.greedy) {
        PathRecord partial{r.greedy_partial, 0.0};
        out += "The greedy walk gets stuck at " + partial.to_string() + " and never reaches the target. ";
        out += "The optimum " + r.optimal.to_string() + " yields " + num(r.optimal_solution_utility) + ". ";
    } else if (r.verdict == Verdict::GreedyAmenableOnInstance) {
        out += "The greedy path " + r.greedy->to_string() + " attains the optimum utility " +
               num(r.optimal_solution_utility) + ". ";
        if (greedy_choice && greedy_choice->opportunity_cost)
            out += "Its first move " + greedy_choice->choice_name() + " forgoes at most " +
                   num(*greedy_choice->opportunity_cost) + ", no more than any alternative. ";
    } else {
        out += "Greedy takes " + (greedy_choice ? greedy_choice->choice_name() : std::string("its first edge"));
        if (greedy_choice) out += " (immediate utility " + num(greedy_choice->immediate_utility) + ")";
        out += " and ends on " + r.greedy->to_string() + " with utility " + num(r.greedy_solution_utility) + ". ";
        if (greedy_choice && greedy_choice->opportunity_cost)
            out += "The opportunity cost of " + greedy_choice->choice_name() + " is " +
                   num(*greedy_choice->opportunity_cost) + ". ";
        if (cheapest && cheapest != greedy_choice) {
            out += "The choice " + cheapest->choice_name() + " (immediate utility " +
                   num(cheapest->immediate_utility) + ") has the lowest opportunity cost, " +
                   (cheapest->opportunity_cost ? num(*cheapest->opportunity_cost) : std::string("none")) + ". ";
            if (greedy_choice) {
                const double gain = greedy_choice->immediate_utility - cheapest->immediate_utility;
                out += "Greedy gains " + num(gain) + " now and forgoes " + num(r.utility_gap) + " overall: ";
            }
        }
        out += "the optimum " + r.optimal.to_string() + " yields " + num(r.optimal_solution_utility) + ". ";
    }
    out += r.verdict == Verdict::GreedyAmenableOnInstance
               ? "Verdict for this instance only: greedy suffices here, which does not show it suffices in general."
               : "Verdict for this instance only: the myopic choice is not optimal, so dynamic programming is required.";
    return out;
}

}  // namespace detail

/// Runs greedy, exhaustive optimum and opportunity-cost analyses and decides,
/// for this instance, whether greedy reaches the optimum.
inline ClassificationReport analyze_path_problem(const Graph& g, std::string_view s, std::string_view t,
                                                 std::size_t vertex_cap = kDefaultVertexCap) {
    ClassificationReport r;
    r.optimal = optimal_path(g, s, t, vertex_cap);
    r.optimal_solution_utility = r.optimal.utility;
    r.decisions = first_decision_analyses(g, s, t, vertex_cap);

    try {
        r.greedy = greedy_path(g, s, t);
        r.greedy_solution_utility = r.greedy->utility;
        r.utility_gap = r.optimal_solution_utility - r.greedy_solution_utility;
    } catch (const GreedyStuckError& e) {
        r.greedy_partial = e.partial_path();
        r.greedy_solution_utility = -std::numeric_limits<double>::infinity();
        r.utility_gap = std::numeric_limits<double>::infinity();
    }
    r.verdict = r.greedy && r.greedy_solution_utility == r.optimal_solution_utility
                    ? Verdict::GreedyAmenableOnInstance
                    : Verdict::RequiresDpOnInstance;

    const auto& walk = r.greedy ? r.greedy->vertices : r.greedy_partial;
    for (std::size_t k = 2; k < walk.size(); ++k) {
        std::span<const Label> prefix(walk.data(), k);
        DecisionPoint point{PathRecord{{prefix.begin(), prefix.end()}, path_utility(g, prefix)},
                            decision_analyses_at(g, prefix, t, vertex_cap)};
        if (!point.analyses.empty()) r.later_decisions.push_back(std::move(point));
    }

    r.narrative = detail::render_narrative(r);
    return r;
}

}  // namespace oppcost
