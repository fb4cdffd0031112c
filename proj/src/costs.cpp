#include "prppp/costs.hpp"

#include <cmath>
#include <stdexcept>

namespace prppp {

namespace {
constexpr double kTol = 1e-9;
} // namespace

double evaluate_global_cost(const Instance& instance, const Plan& plan) {
    const PublicProblem& pub = instance.shared();
    auto inventory = simulate_inventory(pub, plan);
    double total = 0.0;
    for (int t = 0; t < pub.horizon; ++t) {
        total += pub.unit_production_cost * plan.production[static_cast<size_t>(t)];
        if (plan.setup[static_cast<size_t>(t)]) total += pub.setup_cost;
        for (int i = 0; i <= pub.n_retailers; ++i) {
            double level = inventory[static_cast<size_t>(i)][static_cast<size_t>(t)];
            if (level < -kTol) {
                throw std::domain_error("infeasible plan: negative inventory at node " +
                                        std::to_string(i) + ", period " + std::to_string(t + 1));
            }
            total += instance.holding_cost(i) * level;
        }
        total += plan.routing_cost(pub.transport_cost, t);
    }
    return total;
}

double supplier_visible_cost(const PublicProblem& pub, const Plan& plan) {
    auto inventory = simulate_inventory(pub, plan);
    double total = 0.0;
    for (int t = 0; t < pub.horizon; ++t) {
        total += pub.unit_production_cost * plan.production[static_cast<size_t>(t)];
        if (plan.setup[static_cast<size_t>(t)]) total += pub.setup_cost;
        double level = inventory[0][static_cast<size_t>(t)];
        if (level < -kTol) {
            throw std::domain_error("infeasible plan: negative supplier inventory in period " +
                                    std::to_string(t + 1));
        }
        total += pub.supplier_holding_cost * level;
        total += plan.routing_cost(pub.transport_cost, t);
    }
    return total;
}

std::optional<ProductionPlan> lot_for_lot_production(const PublicProblem& pub,
                                                     const std::vector<double>& period_deliveries) {
    ProductionPlan result;
    result.quantity.assign(static_cast<size_t>(pub.horizon), 0.0);
    result.setup.assign(static_cast<size_t>(pub.horizon), false);

    double stock = pub.initial_inventory[0];
    for (int t = 0; t < pub.horizon; ++t) {
        double need = period_deliveries[static_cast<size_t>(t)];
        if (need < 0) return std::nullopt;
        double produce = std::max(0.0, need - stock);
        if (produce > pub.production_capacity + kTol) return std::nullopt;
        result.quantity[static_cast<size_t>(t)] = produce;
        result.setup[static_cast<size_t>(t)] = produce > 0.0;
        stock = stock + produce - need;
    }
    return result;
}

} // namespace prppp
