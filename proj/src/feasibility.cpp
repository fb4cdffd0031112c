#include "prppp/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace prppp {

namespace {
constexpr double kTol = 1e-9;
} // namespace

const char* constraint_name(ConstraintId id) {
    switch (id) {
        case ConstraintId::FlowBalanceSupplier: return "FlowBalanceSupplier";
        case ConstraintId::FlowBalanceRetailer: return "FlowBalanceRetailer";
        case ConstraintId::SetupBigM: return "SetupBigM";
        case ConstraintId::SupplierInventoryCap: return "SupplierInventoryCap";
        case ConstraintId::RetailerInventoryCap: return "RetailerInventoryCap";
        case ConstraintId::VisitBigM: return "VisitBigM";
        case ConstraintId::SingleVehicleVisit: return "SingleVehicleVisit";
        case ConstraintId::FlowConservation: return "FlowConservation";
        case ConstraintId::VehicleCapacity: return "VehicleCapacity";
        case ConstraintId::Subtour: return "Subtour";
        case ConstraintId::Domain: return "Domain";
    }
    return "?";
}

nlohmann::json Violation::to_json() const {
    nlohmann::json doc;
    doc["constraint"] = constraint_name(id);
    if (node >= 0) doc["node"] = node;
    if (vehicle >= 0) doc["vehicle"] = vehicle + 1;
    if (period >= 0) doc["period"] = period + 1;
    doc["magnitude"] = magnitude;
    if (!detail.empty()) doc["detail"] = detail;
    return doc;
}

double big_m_production(const PublicProblem& pub, int period) {
    return std::min(pub.production_capacity, pub.remaining_demand(period));
}

double big_m_visit(const PublicProblem& pub, int retailer, int period) {
    return std::min({pub.vehicle_capacity, pub.inventory_capacity[static_cast<size_t>(retailer)],
                     pub.remaining_demand(retailer, period)});
}

std::vector<Violation> check_feasibility(const PublicProblem& pub, const Plan& plan) {
    std::vector<Violation> out;
    int n = pub.n_retailers;
    int T = pub.horizon;
    int m = pub.n_vehicles;

    auto emit = [&](ConstraintId id, int node, int vehicle, int period, double magnitude,
                    std::string detail = {}) {
        out.push_back(Violation{id, node, vehicle, period, magnitude, std::move(detail)});
    };

    // Domains
    for (int t = 0; t < T; ++t) {
        if (plan.production[static_cast<size_t>(t)] < -kTol) {
            emit(ConstraintId::Domain, 0, -1, t, -plan.production[static_cast<size_t>(t)], "p < 0");
        }
        for (int i = 1; i <= n; ++i) {
            if (plan.quantity(i, t) < -kTol) {
                emit(ConstraintId::Domain, i, -1, t, -plan.quantity(i, t), "q < 0");
            }
        }
    }

    // Stock flow balance: the recurrences define the inventories, so the
    // only way they break with nonnegative domains is a negative level.
    auto inventory = simulate_inventory(pub, plan);
    for (int t = 0; t < T; ++t) {
        if (inventory[0][static_cast<size_t>(t)] < -kTol) {
            emit(ConstraintId::FlowBalanceSupplier, 0, -1, t, -inventory[0][static_cast<size_t>(t)],
                 "supplier stock below zero");
        }
        for (int i = 1; i <= n; ++i) {
            double level = inventory[static_cast<size_t>(i)][static_cast<size_t>(t)];
            if (level < -kTol) {
                emit(ConstraintId::FlowBalanceRetailer, i, -1, t, -level, "unmet demand");
            }
        }
    }

    // Production setup big-M
    for (int t = 0; t < T; ++t) {
        double cap = plan.setup[static_cast<size_t>(t)] ? big_m_production(pub, t) : 0.0;
        double excess = plan.production[static_cast<size_t>(t)] - cap;
        if (excess > kTol) emit(ConstraintId::SetupBigM, 0, -1, t, excess);
    }

    // Inventory capacities: I_0t <= L_0 and I_i,t-1 + q_it <= L_i
    for (int t = 0; t < T; ++t) {
        double excess = inventory[0][static_cast<size_t>(t)] - pub.inventory_capacity[0];
        if (excess > kTol) emit(ConstraintId::SupplierInventoryCap, 0, -1, t, excess);
        for (int i = 1; i <= n; ++i) {
            double carried = t == 0 ? pub.initial_inventory[static_cast<size_t>(i)]
                                    : inventory[static_cast<size_t>(i)][static_cast<size_t>(t - 1)];
            double peak = carried + plan.quantity(i, t);
            double over = peak - pub.inventory_capacity[static_cast<size_t>(i)];
            if (over > kTol) emit(ConstraintId::RetailerInventoryCap, i, -1, t, over);
        }
    }

    // Route structure, visits, loads
    for (int t = 0; t < T; ++t) {
        std::map<int, std::vector<int>> visits; // retailer -> vehicles visiting it
        for (int k = 0; k < m; ++k) {
            const auto& nodes = plan.route(k, t);
            if (nodes.empty()) continue;

            std::set<int> seen;
            bool structural_ok = true;
            if (nodes.front() != 0 || nodes.back() != 0 || nodes.size() < 2) {
                emit(ConstraintId::FlowConservation, nodes.empty() ? -1 : nodes.front(), k, t, 1.0,
                     "route must start and end at the depot");
                structural_ok = false;
            }
            int depot_arcs = 0;
            for (size_t a = 0; a + 1 < nodes.size(); ++a) {
                if (nodes[a] == 0) ++depot_arcs;
                if (nodes[a + 1] == 0) ++depot_arcs;
            }
            if (structural_ok && depot_arcs != 2) {
                emit(ConstraintId::FlowConservation, 0, k, t,
                     std::abs(depot_arcs - 2) / 2.0, "vehicle leaves the depot more than once");
            }
            for (size_t a = 1; a + 1 < nodes.size(); ++a) {
                int node = nodes[a];
                if (node == 0) continue; // counted above
                if (!seen.insert(node).second) {
                    emit(ConstraintId::FlowConservation, node, k, t, 1.0, "node repeated in route");
                }
                visits[node].push_back(k);
            }

            // SEC by reachability: every visited retailer must be connected
            // to the depot through the route's arcs.
            std::set<int> reach;
            bool grow = true;
            reach.insert(0);
            while (grow) {
                grow = false;
                for (size_t a = 0; a + 1 < nodes.size(); ++a) {
                    if (reach.count(nodes[a]) && !reach.count(nodes[a + 1])) {
                        reach.insert(nodes[a + 1]);
                        grow = true;
                    }
                }
            }
            for (int node : seen) {
                if (!reach.count(node)) {
                    emit(ConstraintId::Subtour, node, k, t, 1.0, "retailer not reachable from depot");
                }
            }

            // Vehicle load against the delivery quantities riding this route
            double load = 0.0;
            for (int node : seen) {
                if (plan.vehicle_of(node, t) == k) load += plan.quantity(node, t);
            }
            double over = load - pub.vehicle_capacity;
            if (over > kTol) emit(ConstraintId::VehicleCapacity, -1, k, t, over);
        }

        for (auto& [retailer, vehicles] : visits) {
            if (vehicles.size() > 1) {
                emit(ConstraintId::SingleVehicleVisit, retailer, -1, t,
                     static_cast<double>(vehicles.size()) - 1.0);
            }
        }

        // q_ikt <= M_it z_ikt: positive quantity requires a visit by the
        // assigned vehicle, and the visit big-M caps the quantity.
        for (int i = 1; i <= n; ++i) {
            double q = plan.quantity(i, t);
            if (q <= kTol) continue;
            int k = plan.vehicle_of(i, t);
            const auto& nodes = plan.route(k, t);
            bool visited = k >= 0 && std::find(nodes.begin() + (nodes.empty() ? 0 : 1),
                                               nodes.end(), i) != nodes.end();
            if (!visited) {
                emit(ConstraintId::VisitBigM, i, k, t, q, "delivery without a visit");
            } else {
                // The Q part of M_it is already covered by the route-load
                // check, so report only the cap/remaining-demand part here.
                double cap = std::min(pub.inventory_capacity[static_cast<size_t>(i)],
                                      pub.remaining_demand(i, t));
                double excess = q - cap;
                if (excess > kTol) emit(ConstraintId::VisitBigM, i, k, t, excess);
            }
        }
    }

    return out;
}

std::vector<Violation> check_feasibility(const Instance& instance, const Plan& plan) {
    return check_feasibility(instance.shared(), plan);
}

} // namespace prppp
