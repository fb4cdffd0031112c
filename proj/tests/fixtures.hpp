#ifndef PRPPP_TESTS_FIXTURES_HPP
#define PRPPP_TESTS_FIXTURES_HPP

#include <stdexcept>
#include <tuple>
#include <vector>

#include "prppp/costs.hpp"
#include "prppp/instance.hpp"
#include "prppp/plan.hpp"
#include "prppp/protocol.hpp"
#include "prppp/routing.hpp"

namespace fixtures {

// Sets the given deliveries, rebuilds every period's routes and derives a
// lot-for-lot production plan. (retailer, period, qty) with 0-based periods.
inline prppp::Plan build_plan(const prppp::Instance& instance,
                              const std::vector<std::tuple<int, int, double>>& deliveries) {
    const prppp::PublicProblem& pub = instance.shared();
    prppp::Plan plan(pub.n_retailers, pub.horizon, pub.n_vehicles);
    for (const auto& [i, t, q] : deliveries) plan.set_delivery(i, t, q, 0);
    for (int t = 0; t < pub.horizon; ++t) {
        std::vector<std::pair<int, double>> period;
        for (int i = 1; i <= pub.n_retailers; ++i) {
            if (plan.quantity(i, t) > 0) period.emplace_back(i, plan.quantity(i, t));
        }
        auto routes = prppp::routing::assign_vehicles(pub.transport_cost, period,
                                                      pub.vehicle_capacity, pub.n_vehicles, t);
        if (!routes) throw std::runtime_error("fixture deliveries do not pack");
        for (const auto& route : *routes) {
            plan.set_route(route.vehicle, t, route.nodes);
            for (size_t a = 1; a + 1 < route.nodes.size(); ++a) {
                int i = route.nodes[a];
                plan.set_delivery(i, t, plan.quantity(i, t), route.vehicle);
            }
        }
    }
    std::vector<double> totals(static_cast<size_t>(pub.horizon), 0.0);
    for (int t = 0; t < pub.horizon; ++t) totals[static_cast<size_t>(t)] = plan.period_total(t);
    auto production = prppp::lot_for_lot_production(pub, totals);
    if (!production) throw std::runtime_error("fixture deliveries exceed production capacity");
    plan.production = production->quantity;
    plan.setup = production->setup;
    return plan;
}

// Four retailers, two periods. Retailer 3's single 10-unit delivery sits in
// period 2 and can be anticipated to period 1; the supplier starts with
// enough stock that production never runs. Arc costs are chosen so the
// optimal tours before and after the move cost 1200/1020 and 1220/900.
inline prppp::Instance anticipation_instance() {
    prppp::PublicProblem pub;
    pub.n_retailers = 4;
    pub.horizon = 2;
    pub.n_vehicles = 1;
    pub.unit_production_cost = 8.0;
    pub.setup_cost = 1500.0;
    pub.transport_cost = {
        {0, 200, 300, 520, 450},
        {200, 0, 400, 320, 500},
        {300, 400, 0, 200, 200},
        {520, 320, 200, 0, 200},
        {450, 500, 200, 200, 0},
    };
    pub.demand = {
        {0, 0},
        {10, 10},
        {10, 10},
        {0, 10},
        {10, 0},
    };
    pub.production_capacity = 100.0;
    pub.vehicle_capacity = 100.0;
    pub.inventory_capacity = {100, 50, 50, 50, 50};
    pub.initial_inventory = {60, 0, 0, 0, 0};
    return prppp::Instance::make(std::move(pub), {0.0, 1.0, 1.0, 2.0, 1.0});
}

inline prppp::Plan anticipation_before(const prppp::Instance& instance) {
    return build_plan(instance, {{1, 0, 10}, {2, 0, 10}, {4, 0, 10},
                                 {1, 1, 10}, {2, 1, 10}, {3, 1, 10}});
}

inline prppp::Transaction anticipation_txn() {
    prppp::Transaction txn;
    txn.id = 1;
    txn.kind = prppp::TxnKind::Insertion;
    txn.moves = {prppp::Move{3, 1, 0, 10.0}};
    txn.negotiators = {3};
    return txn;
}

// Five retailers, two periods. Retailer 2's 15 units can be postponed from
// period 1 to 2 while retailer 4's 5 units can be anticipated from period 2
// to 1. Arc costs reproduce tour costs 1250/1050 before the swap and
// 1100/1170, 1300/na, 1150/1020 for the three joint outcomes.
inline prppp::Instance substitution_instance() {
    prppp::PublicProblem pub;
    pub.n_retailers = 5;
    pub.horizon = 2;
    pub.n_vehicles = 1;
    pub.unit_production_cost = 8.0;
    pub.setup_cost = 1500.0;
    pub.transport_cost = {
        {0, 300, 200, 500, 400, 450},
        {300, 0, 400, 200, 200, 350},
        {200, 400, 0, 320, 350, 400},
        {500, 200, 320, 0, 150, 400},
        {400, 200, 350, 150, 0, 200},
        {450, 350, 400, 400, 200, 0},
    };
    pub.demand = {
        {0, 0},
        {10, 10},
        {0, 15},
        {0, 10},
        {0, 5},
        {10, 0},
    };
    pub.production_capacity = 100.0;
    pub.vehicle_capacity = 100.0;
    pub.inventory_capacity = {200, 50, 50, 50, 50, 50};
    pub.initial_inventory = {60, 0, 0, 0, 0, 0};
    return prppp::Instance::make(std::move(pub), {0.0, 1.0, 2.0, 1.0, 3.0, 1.0});
}

inline prppp::Plan substitution_before(const prppp::Instance& instance) {
    return build_plan(instance, {{1, 0, 10}, {2, 0, 15}, {5, 0, 10},
                                 {1, 1, 10}, {3, 1, 10}, {4, 1, 5}});
}

inline prppp::Transaction substitution_txn() {
    prppp::Transaction txn;
    txn.id = 1;
    txn.kind = prppp::TxnKind::Substitution;
    txn.moves = {prppp::Move{2, 0, 1, 15.0}, prppp::Move{4, 1, 0, 5.0}};
    txn.negotiators = {2, 4};
    return txn;
}

} // namespace fixtures

#endif
