#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "oppcost/errors.hpp"
#include "oppcost/graph.hpp"  // detail::format_exact

namespace oppcost {

enum class UtilityKind { Log, Crra };

/// Consumption-savings household: Cobb-Douglas output A*K^alpha, capital law
/// K' = f(K) - C + (1 - delta) K, and discounted utility of consumption.
struct HouseholdModel {
    double beta = 0.95;
    double delta = 1.0;
    double alpha = 0.3;
    double tfp = 1.0;
    UtilityKind utility_kind = UtilityKind::Log;
    /// Relative risk aversion, used only for CRRA.
    double sigma = 2.0;

    void validate() const {
        if (!(beta > 0.0 && beta < 1.0)) throw InputError("beta must lie in (0, 1)");
        if (!(delta > 0.0 && delta <= 1.0)) throw InputError("delta must lie in (0, 1]");
        if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
        if (!(tfp > 0.0) || !std::isfinite(tfp)) throw InputError("A must be > 0");
        if (utility_kind == UtilityKind::Crra && (!(sigma > 0.0) || sigma == 1.0 || !std::isfinite(sigma)))
            throw InputError("CRRA sigma must be > 0 and != 1 (use log utility for sigma = 1)");
    }

    double production(double k) const { return tfp * std::pow(k, alpha); }

    /// Output plus undepreciated capital: everything available to split between C and K'.
    double resources(double k) const { return production(k) + (1.0 - delta) * k; }

    double utility(double c) const {
        if (utility_kind == UtilityKind::Log) return std::log(c);
        return std::pow(c, 1.0 - sigma) / (1.0 - sigma);
    }

    /// Solves beta * (f'(K) + 1 - delta) = 1.
    double steady_state_capital() const {
        return std::pow(alpha * tfp / (1.0 / beta - 1.0 + delta), 1.0 / (1.0 - alpha));
    }
};

/// Strictly increasing, strictly positive capital levels.
class CapitalGrid {
public:
    explicit CapitalGrid(std::vector<double> points) : points_(std::move(points)) {
        if (points_.size() < 2) throw InputError("capital grid needs at least 2 points");
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (!(points_[i] > 0.0) || !std::isfinite(points_[i])) throw InputError("grid points must be > 0");
            if (i && !(points_[i] > points_[i - 1])) throw InputError("grid points must be strictly increasing");
        }
    }

    static CapitalGrid geometric(double lo, double hi, std::size_t n) {
        if (!(lo > 0.0) || !(hi > lo) || n < 2) throw InputError("geometric grid needs 0 < lo < hi and n >= 2");
        std::vector<double> pts(n);
        const double ratio = std::log(hi / lo) / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) pts[i] = lo * std::exp(ratio * static_cast<double>(i));
        pts.back() = hi;
        return CapitalGrid(std::move(pts));
    }

    /// n points spaced geometrically on [0.05 K*, 2.5 K*] around the steady state.
    static CapitalGrid around_steady_state(const HouseholdModel& model, std::size_t n = 501) {
        model.validate();
        const double k_star = model.steady_state_capital();
        return geometric(0.05 * k_star, 2.5 * k_star, n);
    }

    std::size_t size() const noexcept { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    std::span<const double> points() const noexcept { return points_; }
    double front() const noexcept { return points_.front(); }
    double back() const noexcept { return points_.back(); }

    std::size_t nearest_index(double k) const {
        auto it = std::lower_bound(points_.begin(), points_.end(), k);
        if (it == points_.begin()) return 0;
        if (it == points_.end()) return points_.size() - 1;
        const auto hi = static_cast<std::size_t>(it - points_.begin());
        return (k - points_[hi - 1] <= points_[hi] - k) ? hi - 1 : hi;
    }

    /// Widest gap adjacent to point i.
    double cell_width(std::size_t i) const {
        double w = 0.0;
        if (i > 0) w = std::max(w, points_[i] - points_[i - 1]);
        if (i + 1 < points_.size()) w = std::max(w, points_[i + 1] - points_[i]);
        return w;
    }

private:
    std::vector<double> points_;
};

struct BellmanResult {
    std::vector<double> values;
    std::vector<std::size_t> policy;
};

struct ValueSolution {
    explicit ValueSolution(CapitalGrid g) : grid(std::move(g)), values(grid.size(), 0.0), policy(grid.size(), 0) {}

    CapitalGrid grid;
    std::vector<double> values;
    /// Grid index of the chosen next-period capital.
    std::vector<std::size_t> policy;
    std::size_t iterations = 0;
    double residual = 0.0;
    std::vector<double> residual_history;
    double beta = 0.0;

    /// Sup-norm distance to the true fixed point of the discrete operator.
    double error_bound() const { return residual * beta / (1.0 - beta); }

    double next_capital(std::size_t i) const { return grid[policy[i]]; }
};

namespace detail {

/// u(f(K_i) + (1 - delta) K_i - K'_j) for every feasible (i, j). Feasible
/// choices for row i are exactly j < limit[i] because consumption falls in j.
class RewardTable {
public:
    RewardTable(const HouseholdModel& model, const CapitalGrid& grid) : n_(grid.size()), limit_(n_), reward_(n_ * n_) {
        model.validate();
        for (std::size_t i = 0; i < n_; ++i) {
            const double wealth = model.resources(grid[i]);
            std::size_t j = 0;
            for (; j < n_ && wealth - grid[j] > 0.0; ++j) reward_[i * n_ + j] = model.utility(wealth - grid[j]);
            if (j == 0)
                throw GridConfigError("grid point K = " + format_exact(grid[i]) +
                                      " admits no choice with positive consumption; lower the grid minimum");
            limit_[i] = j;
        }
    }

    std::size_t size() const noexcept { return n_; }

    void apply(double beta, std::span<const double> v, std::span<double> out, std::span<std::size_t> policy) const {
        for (std::size_t i = 0; i < n_; ++i) {
            const double* row = &reward_[i * n_];
            double best = -std::numeric_limits<double>::infinity();
            std::size_t arg = 0;
            for (std::size_t j = 0; j < limit_[i]; ++j) {
                const double candidate = row[j] + beta * v[j];
                if (candidate > best) {
                    best = candidate;
                    arg = j;
                }
            }
            out[i] = best;
            policy[i] = arg;
        }
    }

private:
    std::size_t n_;
    std::vector<std::size_t> limit_;
    std::vector<double> reward_;
};

inline double sup_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace detail

/// One application of the Bellman operator on the grid. Ties go to the
/// smallest next-period capital.
inline BellmanResult bellman_operator(const HouseholdModel& model, const CapitalGrid& grid,
                                      std::span<const double> values) {
    if (values.size() != grid.size()) throw InputError("value array size does not match grid");
    for (double v : values)
        if (!std::isfinite(v)) throw InputError("value array must be finite");
    const detail::RewardTable table(model, grid);
    BellmanResult r{std::vector<double>(grid.size()), std::vector<std::size_t>(grid.size())};
    table.apply(model.beta, values, r.values, r.policy);
    return r;
}

/// Iterates the Bellman operator from V = 0 until the sup-norm change drops below `tol`.
inline ValueSolution value_function_iteration(const HouseholdModel& model, const CapitalGrid& grid,
                                              double tol = 1e-8, std::size_t max_iter = 10000) {
    if (!(tol > 0.0)) throw InputError("tolerance must be > 0");
    if (max_iter == 0) throw InputError("max_iter must be > 0");
    const detail::RewardTable table(model, grid);

    ValueSolution sol(grid);
    sol.beta = model.beta;
    std::vector<double> next(grid.size());
    for (std::size_t it = 1; it <= max_iter; ++it) {
        table.apply(model.beta, sol.values, next, sol.policy);
        sol.residual = detail::sup_distance(next, sol.values);
        sol.residual_history.push_back(sol.residual);
        sol.values.swap(next);
        sol.iterations = it;
        if (sol.residual < tol) return sol;
    }
    throw NonConvergenceError(sol.residual, max_iter);
}

/// Analytic solution for log utility with full depreciation:
/// K' = alpha beta A K^alpha and V(K) = intercept + slope ln K.
struct BrockMirman {
    double savings_rate = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double tfp = 1.0;
    double alpha = 0.0;

    double policy(double k) const { return savings_rate * tfp * std::pow(k, alpha); }
    double value(double k) const { return intercept + slope * std::log(k); }
};

inline BrockMirman brock_mirman(const HouseholdModel& model) {
    model.validate();
    if (model.utility_kind != UtilityKind::Log || model.delta != 1.0)
        throw InputError("unsupported configuration: the closed form needs log utility and delta = 1");
    const double ab = model.alpha * model.beta;
    BrockMirman bm;
    bm.savings_rate = ab;
    bm.slope = model.alpha / (1.0 - ab);
    bm.intercept = (std::log((1.0 - ab) * model.tfp) + ab / (1.0 - ab) * std::log(ab * model.tfp)) / (1.0 - model.beta);
    bm.tfp = model.tfp;
    bm.alpha = model.alpha;
    return bm;
}

/// The analytic solution sampled on the grid, with the policy snapped to the
/// nearest grid point.
inline ValueSolution closed_form_log_full_depreciation(const HouseholdModel& model, const CapitalGrid& grid) {
    const auto bm = brock_mirman(model);
    ValueSolution sol(grid);
    sol.beta = model.beta;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        sol.values[i] = bm.value(grid[i]);
        sol.policy[i] = grid.nearest_index(bm.policy(grid[i]));
    }
    return sol;
}

/// Eat as much as the grid allows: next capital is always the smallest feasible grid point.
inline std::vector<std::size_t> myopic_policy(const HouseholdModel& model, const CapitalGrid& grid) {
    std::vector<std::size_t> policy(grid.size(), 0);
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (!(model.resources(grid[i]) - grid[0] > 0.0))
            throw GridConfigError("grid point K = " + detail::format_exact(grid[i]) + " admits no feasible choice");
    return policy;
}

struct Simulation {
    std::vector<double> consumption;
    /// T + 1 entries: starting capital through end-of-horizon capital.
    std::vector<double> capital;
    double discounted_utility = 0.0;
};

/// Follows a grid policy for T periods from K0 (snapped to the nearest grid
/// point) and accumulates sum_t beta^t u(C_t).
inline Simulation simulate_policy(const HouseholdModel& model, const CapitalGrid& grid,
                                  std::span<const std::size_t> policy, double k0, std::size_t periods) {
    model.validate();
    if (policy.size() != grid.size()) throw InputError("policy size does not match grid");
    if (periods == 0) throw InputError("simulation needs at least one period");
    if (!(k0 >= grid.front() && k0 <= grid.back()))
        throw InputError("starting capital " + detail::format_exact(k0) + " lies outside the grid [" +
                         detail::format_exact(grid.front()) + ", " + detail::format_exact(grid.back()) +
                         "]; enlarge the grid");

    Simulation sim;
    std::size_t state = grid.nearest_index(k0);
    sim.capital.push_back(grid[state]);
    double discount = 1.0;
    for (std::size_t t = 0; t < periods; ++t) {
        const std::size_t next = policy[state];
        if (next >= grid.size()) throw InputError("policy index outside the grid");
        const double c = model.resources(grid[state]) - grid[next];
        if (!(c > 0.0)) throw GridConfigError("policy prescribes non-positive consumption");
        sim.consumption.push_back(c);
        sim.discounted_utility += discount * model.utility(c);
        discount *= model.beta;
        state = next;
        sim.capital.push_back(grid[state]);
    }
    return sim;
}

/// CSV with header K,V,K_prime,C and one row per grid point.
inline void write_value_csv(std::ostream& out, const HouseholdModel& model, const ValueSolution& sol) {
    out << "K,V,K_prime,C\n";
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double k = sol.grid[i];
        const double kp = sol.next_capital(i);
        out << detail::format_exact(k) << ',' << detail::format_exact(sol.values[i]) << ','
            << detail::format_exact(kp) << ',' << detail::format_exact(model.resources(k) - kp) << '\n';
    }
}

}  // namespace oppcost
