#ifndef PRPPP_COSTS_HPP
#define PRPPP_COSTS_HPP

#include <optional>
#include <vector>

#include "prppp/instance.hpp"
#include "prppp/plan.hpp"

namespace prppp {

/// Objective value over the full horizon: production, setup, inventory at
/// every node, and routing. Uses the private retailer holding costs, so it
/// is an omniscient, test-side evaluator; supplier-side code cannot call it
/// (it requires the full Instance, not the shared view).
/// Throws std::domain_error when the plan drives any inventory negative.
double evaluate_global_cost(const Instance& instance, const Plan& plan);

/// Same objective with the inventory term restricted to the supplier:
/// what the coordinator can actually compute from its own view.
double supplier_visible_cost(const PublicProblem& pub, const Plan& plan);

struct ProductionPlan {
    std::vector<double> quantity; // p_t
    std::vector<bool> setup;      // y_t
};

/// Greedy lot-for-lot production: produce in each period exactly the
/// shortfall between that period's deliveries and the stock carried in,
/// left to right. Supplier stock never goes negative and never exceeds its
/// starting level. Returns nullopt when some prefix of deliveries exceeds
/// cumulative production capacity; callers must reject the causing state.
std::optional<ProductionPlan> lot_for_lot_production(const PublicProblem& pub,
                                                     const std::vector<double>& period_deliveries);

} // namespace prppp

#endif
