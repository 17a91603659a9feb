#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "oppcost/errors.hpp"

namespace oppcost {

/// Per-period cost fixed_cost + quadratic_coefficient * Y^2, facing a known price series.
struct ProducerModel {
    double fixed_cost = 1000.0;
    double quadratic_coefficient = 1.0;
    std::vector<double> prices;

    std::size_t horizon() const noexcept { return prices.size(); }

    void validate() const {
        if (!std::isfinite(fixed_cost) || fixed_cost < 0.0) throw InputError("fixed cost must be >= 0");
        if (!std::isfinite(quadratic_coefficient) || quadratic_coefficient <= 0.0)
            throw InputError("quadratic cost coefficient must be > 0");
        if (prices.empty()) throw InputError("price series must cover at least one period");
        for (double p : prices)
            if (!std::isfinite(p) || p < 0.0) throw InputError("prices must be finite and >= 0");
    }
};

struct PeriodOptimum {
    double output = 0.0;
    double profit = 0.0;
};

struct ProducerPlan {
    std::vector<PeriodOptimum> periods;
    bool operate = false;
    /// Horizon profit if the plant stays open, whether or not it does.
    double operating_profit = 0.0;
    double total_profit = 0.0;
};

/// Maximiser of P*Y - F - c*Y^2.
inline PeriodOptimum producer_period_optimum(double price, const ProducerModel& model) {
    if (!std::isfinite(price) || price < 0.0) throw InputError("price must be finite and >= 0");
    const double c = model.quadratic_coefficient;
    return {price / (2.0 * c), price * price / (4.0 * c) - model.fixed_cost};
}

/// Whole-horizon profit of an arbitrary output plan while operating.
inline double plan_profit(const ProducerModel& model, const std::vector<double>& outputs) {
    if (outputs.size() != model.horizon()) throw InputError("plan length does not match horizon");
    double total = 0.0;
    for (std::size_t t = 0; t < outputs.size(); ++t)
        total += model.prices[t] * outputs[t] - model.fixed_cost -
                 model.quadratic_coefficient * outputs[t] * outputs[t];
    return total;
}

/// Period-by-period optimum plus the single global check: keep the plant open
/// only if the horizon as a whole is profitable.
inline ProducerPlan producer_plan(const ProducerModel& model) {
    model.validate();
    ProducerPlan plan;
    for (double p : model.prices) {
        plan.periods.push_back(producer_period_optimum(p, model));
        plan.operating_profit += plan.periods.back().profit;
    }
    plan.operate = plan.operating_profit >= 0.0;
    if (plan.operate) {
        plan.total_profit = plan.operating_profit;
    } else {
        for (auto& period : plan.periods) period = {};
    }
    return plan;
}

}  // namespace oppcost
