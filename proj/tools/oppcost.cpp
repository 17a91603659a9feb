// oppcost: command-line front end for the opportunity-cost analyses.
//
// Exit codes: 0 success, 2 input or validation error, 3 domain infeasibility
// (no path, disconnected graph, non-convergence).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oppcost/oppcost.hpp"

using nlohmann::json;
using namespace oppcost;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr double kClosedFormTolerance = 0.02;

std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <typename T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

json path_json(const PathRecord& p) { return {{"vertices", p.vertices}, {"utility", p.utility}}; }

json edge_json(const Edge& e) { return {{"u", e.u}, {"v", e.v}, {"weight", e.weight}}; }

json decision_json(const DecisionAnalysis& d) {
    json forgone = json::array();
    for (const auto& f : d.forgone_alternatives)
        forgone.push_back({{"choice", d.from + "-" + f.to}, {"best_completion_utility", f.best_completion_utility}});
    return {{"choice", d.choice_name()},
            {"immediate_utility", d.immediate_utility},
            {"best_completion", path_json(d.best_completion)},
            {"best_completion_utility", d.best_completion_utility},
            {"opportunity_cost", optional_json(d.opportunity_cost)},
            {"is_greedy_choice", d.is_greedy_choice},
            {"forgone_alternatives", forgone}};
}

/// What a subcommand produced: a structured payload plus its text rendering.
struct Outcome {
    json payload;
    std::string text;
};

// ---------------------------------------------------------------- path

struct PathArgs {
    std::string graph_file;
    std::string source;
    std::string target;
    bool decisions = false;
};

std::string decision_table(const std::vector<DecisionAnalysis>& rows) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "  %-10s %10s %16s %17s  %s\n", "choice", "immediate", "best completion",
                  "opportunity cost", "greedy");
    out << line;
    for (const auto& d : rows) {
        std::snprintf(line, sizeof line, "  %-10s %10s %16s %17s  %s\n", d.choice_name().c_str(),
                      num(d.immediate_utility).c_str(), num(d.best_completion_utility).c_str(),
                      d.opportunity_cost ? num(*d.opportunity_cost).c_str() : "none", d.is_greedy_choice ? "yes" : "");
        out << line;
    }
    return out.str();
}

Outcome run_path(const PathArgs& args) {
    const auto g = load_edge_list(args.graph_file);
    const auto report = analyze_path_problem(g, args.source, args.target);

    Outcome o;
    auto& p = o.payload;
    p["source"] = args.source;
    p["target"] = args.target;
    p["greedy"] = report.greedy ? path_json(*report.greedy) : json(nullptr);
    p["greedy_stuck"] = !report.greedy.has_value();
    if (!report.greedy) p["greedy_partial"] = report.greedy_partial;
    p["greedy_utility"] = number_or_null(report.greedy_solution_utility);
    p["optimal"] = path_json(report.optimal);
    p["optimal_utility"] = report.optimal_solution_utility;
    p["gap"] = number_or_null(report.utility_gap);
    p["verdict"] = to_string(report.verdict);
    p["narrative"] = report.narrative;
    if (args.decisions) {
        p["decisions"] = json::array();
        for (const auto& d : report.decisions) p["decisions"].push_back(decision_json(d));
        p["later_decisions_extension"] = json::array();
        for (const auto& point : report.later_decisions) {
            json rows = json::array();
            for (const auto& d : point.analyses) rows.push_back(decision_json(d));
            p["later_decisions_extension"].push_back({{"prefix", path_json(point.prefix)}, {"analyses", rows}});
        }
    }

    std::ostringstream t;
    if (report.greedy)
        t << "greedy path:  " << report.greedy->to_string() << "  utility " << num(report.greedy_solution_utility) << "\n";
    else
        t << "greedy path:  stuck after " << PathRecord{report.greedy_partial, 0}.to_string() << "\n";
    t << "optimal path: " << report.optimal.to_string() << "  utility " << num(report.optimal_solution_utility) << "\n";
    t << "gap:          " << num(report.utility_gap) << "\n";
    t << "verdict:      " << to_string(report.verdict) << "\n\n";
    t << report.narrative << "\n";
    if (args.decisions) {
        t << "\nfirst decision at " << args.source
          << " (opportunity cost = best total utility among paths not taking the edge):\n"
          << decision_table(report.decisions);
        if (!report.later_decisions.empty()) {
            t << "\nlater decisions along the greedy walk (extension: same definition applied after a prefix):\n";
            for (const auto& point : report.later_decisions)
                t << " after " << point.prefix.to_string() << ":\n" << decision_table(point.analyses);
        }
    }
    o.text = t.str();
    return o;
}

// ---------------------------------------------------------------- mst

struct MstArgs {
    std::string graph_file;
    bool trace = false;
    bool verify = false;
};

Outcome run_mst(const MstArgs& args) {
    const auto g = load_edge_list(args.graph_file);
    const auto result = kruskal_max_spanning_tree(g);

    Outcome o;
    auto& p = o.payload;
    p["edges"] = json::array();
    for (const auto& e : result.tree.edges) p["edges"].push_back(edge_json(e));
    p["total_weight"] = result.tree.total_weight;

    std::ostringstream t;
    t << "maximum spanning tree (total weight " << num(result.tree.total_weight) << "):\n";
    for (const auto& e : result.tree.edges) t << "  " << e.name() << " " << num(e.weight) << "\n";

    if (args.trace) {
        const auto first = first_choice_opportunity_costs(g);
        json ordering = json::array(), firsts = json::array(), steps = json::array();
        for (const auto& e : result.trace.ordered_edges) ordering.push_back(edge_json(e));
        for (const auto& c : first)
            firsts.push_back({{"edge", edge_json(c.edge)}, {"opportunity_cost", optional_json(c.opportunity_cost)}});
        for (const auto& s : result.trace.steps) {
            json alts = json::array();
            for (const auto& e : s.feasible_alternatives) alts.push_back(e.name());
            steps.push_back({{"edge", edge_json(s.considered)},
                             {"outcome", to_string(s.outcome)},
                             {"feasible_alternatives", alts},
                             {"opportunity_cost", optional_json(s.opportunity_cost)}});
        }
        p["ordering"] = ordering;
        p["first_choice_opportunity_costs"] = firsts;
        p["steps"] = steps;

        t << "\nedge ordering: [";
        for (std::size_t i = 0; i < result.trace.ordered_edges.size(); ++i) {
            const auto& e = result.trace.ordered_edges[i];
            t << (i ? ", " : "") << e.name() << ": " << num(e.weight);
        }
        t << "]\n\nopportunity cost of each edge as the first pick (every other edge still feasible):\n";
        for (const auto& c : first)
            t << "  " << c.edge.name() << "  " << (c.opportunity_cost ? num(*c.opportunity_cost) : "none") << "\n";
        t << "\nkruskal steps (opportunity cost = heaviest feasible alternative at that step):\n";
        for (std::size_t i = 0; i < result.trace.steps.size(); ++i) {
            const auto& s = result.trace.steps[i];
            t << "  " << i + 1 << ". " << s.considered.name() << " " << num(s.considered.weight) << "  "
              << to_string(s.outcome) << "  opportunity cost "
              << (s.opportunity_cost ? num(*s.opportunity_cost) : "none") << "  ("
              << s.feasible_alternatives.size() << " feasible alternatives)\n";
        }
    }

    if (args.verify) {
        json v;
        t << "\n";
        try {
            const auto oracle = brute_force_max_spanning_tree(g);
            const bool match = oracle.total_weight == result.tree.total_weight;
            v["oracle_total_weight"] = oracle.total_weight;
            v["oracle_match"] = match;
            v["oracle_same_edges"] = oracle.edges == result.tree.edges;
            t << "oracle match: " << (match ? "yes" : "no") << " (brute force total " << num(oracle.total_weight)
              << ", kruskal total " << num(result.tree.total_weight) << ")\n";
        } catch (const TooLargeError& e) {
            v["oracle_match"] = nullptr;
            v["oracle_skipped"] = e.what();
            t << "oracle match: skipped (" << e.what() << ")\n";
        }
        const auto check = verify_greedy_min_oppcost(result.trace);
        json steps = json::array();
        for (const auto& s : check.steps)
            steps.push_back({{"step", s.step + 1},
                             {"edge", s.chosen.name()},
                             {"chosen_cost", optional_json(s.chosen_cost)},
                             {"best_alternative_cost", optional_json(s.best_alternative_cost)},
                             {"pass", s.pass}});
        v["greedy_min_oppcost"] = {{"all_pass", check.all_pass}, {"steps", steps}, {"rationale", check.rationale}};
        p["verification"] = v;
        t << "greedy choice has minimum opportunity cost at every accepted step: "
          << (check.all_pass ? "yes" : "no") << "\n  " << check.rationale << "\n";
    }
    o.text = t.str();
    return o;
}

// ---------------------------------------------------------------- producer

struct ProducerArgs {
    std::vector<double> prices;
    double fixed = 1000.0;
    double quad = 1.0;
};

Outcome run_producer(const ProducerArgs& args) {
    ProducerModel model{args.fixed, args.quad, args.prices};
    const auto plan = producer_plan(model);

    Outcome o;
    json periods = json::array();
    for (std::size_t i = 0; i < plan.periods.size(); ++i)
        periods.push_back({{"period", i + 1},
                           {"price", model.prices[i]},
                           {"output", plan.periods[i].output},
                           {"profit", plan.periods[i].profit}});
    o.payload = {{"operate", plan.operate},
                 {"operating_profit", plan.operating_profit},
                 {"total_profit", plan.total_profit},
                 {"periods", periods}};

    std::ostringstream t;
    t << "decision: " << (plan.operate ? "operate" : "shut down") << "\n";
    t << "profit if operating over the horizon: " << num(plan.operating_profit) << "\n";
    t << "total profit: " << num(plan.total_profit) << "\n";
    t << "period  price  output  profit\n";
    for (std::size_t i = 0; i < plan.periods.size(); ++i)
        t << "  " << i + 1 << "  " << num(model.prices[i]) << "  " << num(plan.periods[i].output) << "  "
          << num(plan.periods[i].profit) << "\n";
    o.text = t.str();
    return o;
}

// ---------------------------------------------------------------- household

struct HouseholdArgs {
    double beta = 0.95;
    double delta = 1.0;
    double alpha = 0.3;
    double tfp = 1.0;
    std::string utility = "log";
    double sigma = 2.0;
    std::size_t grid_n = 501;
    double tol = 1e-8;
    std::size_t max_iter = 10000;
    bool compare_closed_form = false;
    std::size_t simulate = 0;
    std::string csv;
};

Outcome run_household(const HouseholdArgs& args) {
    HouseholdModel model;
    model.beta = args.beta;
    model.delta = args.delta;
    model.alpha = args.alpha;
    model.tfp = args.tfp;
    model.utility_kind = args.utility == "crra" ? UtilityKind::Crra : UtilityKind::Log;
    model.sigma = args.sigma;
    model.validate();
    if (args.compare_closed_form) brock_mirman(model);

    const auto grid = CapitalGrid::around_steady_state(model, args.grid_n);
    const auto sol = value_function_iteration(model, grid, args.tol, args.max_iter);
    const double k_star = model.steady_state_capital();

    Outcome o;
    auto& p = o.payload;
    p["steady_state_capital"] = k_star;
    p["grid"] = {{"n", grid.size()}, {"min", grid.front()}, {"max", grid.back()}};
    p["iterations"] = sol.iterations;
    p["residual"] = sol.residual;
    p["error_bound"] = sol.error_bound();

    std::ostringstream t;
    t << "steady-state capital K*: " << num(k_star) << "\n";
    t << "grid: " << grid.size() << " points on [" << num(grid.front()) << ", " << num(grid.back()) << "]\n";
    t << "value iteration: " << sol.iterations << " iterations, residual " << num(sol.residual) << ", error bound "
      << num(sol.error_bound()) << "\n";

    if (args.compare_closed_form) {
        const auto bm = brock_mirman(model);
        const std::size_t lo = grid.size() / 10, hi = grid.size() - grid.size() / 10;
        double max_rel = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const double exact = bm.policy(grid[i]);
            max_rel = std::max(max_rel, std::abs(sol.next_capital(i) - exact) / exact);
        }
        const bool ok = max_rel <= kClosedFormTolerance;
        p["closed_form"] = {{"savings_rate", bm.savings_rate},
                            {"value_slope", bm.slope},
                            {"value_intercept", bm.intercept},
                            {"max_relative_policy_error", max_rel},
                            {"tolerance", kClosedFormTolerance},
                            {"within_tolerance", ok}};
        t << "closed form: K' = " << num(bm.savings_rate * model.tfp) << " K^" << num(model.alpha) << ", V = "
          << num(bm.intercept) << " + " << num(bm.slope) << " ln K\n";
        t << "max relative policy error over middle 80% of grid: " << num(max_rel) << " (tolerance "
          << num(kClosedFormTolerance) << ", " << (ok ? "within" : "outside") << ")\n";
    }

    if (args.simulate > 0) {
        const auto dp = simulate_policy(model, grid, sol.policy, k_star, args.simulate);
        const auto myopic = simulate_policy(model, grid, myopic_policy(model, grid), k_star, args.simulate);
        p["simulation"] = {{"periods", args.simulate},
                           {"start_capital", dp.capital.front()},
                           {"dp_lifetime_utility", dp.discounted_utility},
                           {"myopic_lifetime_utility", myopic.discounted_utility},
                           {"dp_advantage", dp.discounted_utility - myopic.discounted_utility},
                           {"dp_strictly_better", dp.discounted_utility > myopic.discounted_utility}};
        t << "simulation over " << args.simulate << " periods from K = " << num(dp.capital.front()) << ":\n";
        t << "  dynamic programming lifetime utility: " << num(dp.discounted_utility) << "\n";
        t << "  myopic greedy lifetime utility:       " << num(myopic.discounted_utility) << "\n";
        t << "  advantage of dynamic programming:     " << num(dp.discounted_utility - myopic.discounted_utility)
          << "\n";
    }

    if (!args.csv.empty()) {
        std::ofstream out(args.csv);
        if (!out) throw InputError("cannot write CSV file '" + args.csv + "'");
        write_value_csv(out, model, sol);
        p["csv"] = args.csv;
        t << "value function and policy written to " << args.csv << "\n";
    }
    o.text = t.str();
    return o;
}

// ---------------------------------------------------------------- envelope

int emit(const std::string& command, bool as_json, const std::function<Outcome()>& run) {
    auto fail = [&](int code, const std::string& kind, const std::string& message) {
        if (as_json) {
            json env = {{"command", command},
                        {"status", "error"},
                        {"exit_code", code},
                        {"error", {{"kind", kind}, {"message", message}}}};
            std::cout << env.dump(2) << "\n";
        }
        std::cerr << "error: " << message << "\n";
        return code;
    };
    try {
        const auto outcome = run();
        if (as_json) {
            json env = {{"command", command}, {"status", "ok"}, {"exit_code", kExitOk}, {"payload", outcome.payload}};
            std::cout << env.dump(2) << "\n";
        } else {
            std::cout << outcome.text;
        }
        return kExitOk;
    } catch (const InputError& e) {
        return fail(kExitInput, "input", e.what());
    } catch (const InfeasibleError& e) {
        return fail(kExitInfeasible, "infeasible", e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Opportunity-cost analysis of greedy versus dynamic-programming choices"};
    app.require_subcommand(1);
    bool as_json = false;

    PathArgs path_args;
    auto* path = app.add_subcommand("path", "Maximum-benefit path: greedy vs optimum with opportunity costs");
    path->add_option("graph_file", path_args.graph_file, "Edge-list file")->required();
    path->add_option("--source,-s", path_args.source, "Start vertex")->required();
    path->add_option("--target,-t", path_args.target, "End vertex")->required();
    path->add_flag("--decisions", path_args.decisions, "Print the per-choice opportunity-cost table");
    path->add_flag("--json", as_json, "Structured output");

    MstArgs mst_args;
    auto* mst = app.add_subcommand("mst", "Maximum spanning tree via Kruskal with opportunity-cost trace");
    mst->add_option("graph_file", mst_args.graph_file, "Edge-list file")->required();
    mst->add_flag("--trace", mst_args.trace, "Print ordering and per-step opportunity costs");
    mst->add_flag("--verify", mst_args.verify, "Check against brute force and the min-opportunity-cost property");
    mst->add_flag("--json", as_json, "Structured output");

    ProducerArgs producer_args;
    auto* producer = app.add_subcommand("producer", "Static producer problem solved period by period");
    producer->add_option("--prices", producer_args.prices, "Comma-separated price per period")
        ->required()
        ->delimiter(',');
    producer->add_option("--fixed", producer_args.fixed, "Fixed cost per period")->capture_default_str();
    producer->add_option("--quad", producer_args.quad, "Quadratic cost coefficient")->capture_default_str();
    producer->add_flag("--json", as_json, "Structured output");

    HouseholdArgs hh;
    auto* household = app.add_subcommand("household", "Dynamic household problem solved by value-function iteration");
    household->add_option("--beta", hh.beta, "Discount factor in (0,1)")->capture_default_str();
    household->add_option("--delta", hh.delta, "Depreciation in (0,1]")->capture_default_str();
    household->add_option("--alpha", hh.alpha, "Capital share in (0,1)")->capture_default_str();
    household->add_option("--A", hh.tfp, "Productivity A > 0")->capture_default_str();
    household->add_option("--utility", hh.utility, "log or crra")
        ->check(CLI::IsMember({"log", "crra"}))
        ->capture_default_str();
    household->add_option("--sigma", hh.sigma, "CRRA coefficient (> 0, != 1)")->capture_default_str();
    household->add_option("--grid-n", hh.grid_n, "Capital grid points")->capture_default_str();
    household->add_option("--tol", hh.tol, "Sup-norm convergence tolerance")->capture_default_str();
    household->add_option("--max-iter", hh.max_iter, "Iteration limit")->capture_default_str();
    household->add_flag("--compare-closed-form", hh.compare_closed_form,
                        "Compare the policy with the log / full-depreciation closed form");
    household->add_option("--simulate", hh.simulate, "Simulate T periods from K*: DP vs myopic greedy");
    household->add_option("--csv", hh.csv, "Write K,V,K_prime,C to this file");
    household->add_flag("--json", as_json, "Structured output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::string command = "oppcost";
        for (int i = 1; i < argc; ++i) {
            const std::string a = argv[i];
            if (a == "--json") as_json = true;
            if (command == "oppcost" && (a == "path" || a == "mst" || a == "producer" || a == "household")) command = a;
        }
        return emit(command, as_json, [&]() -> Outcome { throw InputError(e.what()); });
    }

    if (*path) return emit("path", as_json, [&] { return run_path(path_args); });
    if (*mst) return emit("mst", as_json, [&] { return run_mst(mst_args); });
    if (*producer) return emit("producer", as_json, [&] { return run_producer(producer_args); });
    return emit("household", as_json, [&] { return run_household(hh); });
}
