#include "prppp/views.hpp"

namespace prppp {

SupplierView make_supplier_view(const PublicProblem& pub, const Plan& plan) {
    SupplierView view;
    view.problem = &pub;
    view.plan = &plan;
    view.neighborhoods.reserve(static_cast<size_t>(pub.horizon));
    for (int t = 0; t < pub.horizon; ++t) view.neighborhoods.push_back(plan.neighborhood(t));
    return view;
}

RetailerView make_retailer_view(const Instance& instance, const Plan& plan, int retailer) {
    const PublicProblem& pub = instance.shared();
    int T = pub.horizon;
    int n = pub.n_retailers;

    RetailerView view;
    view.id = retailer;
    view.holding_cost = instance.holding_cost(retailer);
    view.demand = pub.demand[static_cast<size_t>(retailer)];
    view.delivered.assign(static_cast<size_t>(T), 0.0);
    view.member.assign(static_cast<size_t>(T), false);
    view.shipping_quote.assign(static_cast<size_t>(T), 0.0);
    view.product_quote.assign(static_cast<size_t>(T), 0.0);
    view.neighbors.assign(static_cast<size_t>(T), {});
    view.neighbor_cost.assign(static_cast<size_t>(T), {});

    auto inventory = simulate_inventory(pub, plan);
    view.inventory = inventory[static_cast<size_t>(retailer)];

    for (int t = 0; t < T; ++t) {
        double q = plan.quantity(retailer, t);
        view.delivered[static_cast<size_t>(t)] = q;
        auto members = plan.neighborhood(t);
        bool in = q > 0.0;
        view.member[static_cast<size_t>(t)] = in;
        if (in && !members.empty()) {
            view.shipping_quote[static_cast<size_t>(t)] =
                plan.routing_cost(pub.transport_cost, t) / static_cast<double>(members.size());
            for (int other : members) {
                if (other == retailer) continue;
                view.neighbors[static_cast<size_t>(t)].push_back(other);
                view.neighbor_cost[static_cast<size_t>(t)].push_back(
                    pub.transport_cost[static_cast<size_t>(retailer)][static_cast<size_t>(other)]);
            }
        }
        view.product_quote[static_cast<size_t>(t)] =
            (pub.unit_production_cost * plan.production[static_cast<size_t>(t)] +
             (plan.setup[static_cast<size_t>(t)] ? pub.setup_cost : 0.0) +
             pub.supplier_holding_cost * inventory[0][static_cast<size_t>(t)]) /
            static_cast<double>(n);
    }
    return view;
}

} // namespace prppp
