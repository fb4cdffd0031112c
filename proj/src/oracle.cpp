#include "prppp/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include "prppp/costs.hpp"
#include "prppp/routing.hpp"

namespace prppp {

namespace {

constexpr double kTol = 1e-9;

struct CandidateSchedule {
    std::vector<double> quantity; // per period
    double holding_cost = 0.0;    // h_i weighted stock of this retailer
};

// Every delivery schedule reachable by assigning each demand block to some
// period (or to initial stock) that keeps the retailer's own stock
// nonnegative and under its cap. Demands may ride ahead of their period
// when earlier deliveries cover the gap, so targets run over the whole
// horizon, not just t and earlier.
std::vector<CandidateSchedule> retailer_candidates(const Instance& instance, int retailer) {
    const PublicProblem& pub = instance.shared();
    int T = pub.horizon;
    double h = instance.holding_cost(retailer);

    std::vector<int> demand_periods;
    for (int t = 0; t < T; ++t) {
        if (pub.demand[static_cast<size_t>(retailer)][static_cast<size_t>(t)] > 0) {
            demand_periods.push_back(t);
        }
    }

    std::map<std::vector<double>, double> found;
    std::vector<double> quantity(static_cast<size_t>(T), 0.0);
    double stock_assigned = 0.0;

    auto evaluate = [&]() {
        double inv = pub.initial_inventory[static_cast<size_t>(retailer)];
        double cost = 0.0;
        for (int t = 0; t < T; ++t) {
            double q = quantity[static_cast<size_t>(t)];
            if (inv + q > pub.inventory_capacity[static_cast<size_t>(retailer)] + kTol) return;
            inv = inv + q - pub.demand[static_cast<size_t>(retailer)][static_cast<size_t>(t)];
            if (inv < -kTol) return;
            cost += h * inv;
        }
        found.emplace(quantity, cost);
    };

    auto recurse = [&](auto&& self, size_t idx) -> void {
        if (idx == demand_periods.size()) {
            evaluate();
            return;
        }
        int t = demand_periods[idx];
        double d = pub.demand[static_cast<size_t>(retailer)][static_cast<size_t>(t)];
        for (int target = 0; target < T; ++target) {
            quantity[static_cast<size_t>(target)] += d;
            self(self, idx + 1);
            quantity[static_cast<size_t>(target)] -= d;
        }
        if (stock_assigned + d <= pub.initial_inventory[static_cast<size_t>(retailer)] + kTol) {
            stock_assigned += d;
            self(self, idx + 1);
            stock_assigned -= d;
        }
    };
    recurse(recurse, 0);

    std::vector<CandidateSchedule> out;
    out.reserve(found.size());
    for (const auto& [q, cost] : found) out.push_back(CandidateSchedule{q, cost});
    return out;
}

struct ProductionCost {
    double cost = 0.0; // u p + f y + h0 I0 over the horizon
    std::vector<double> quantity;
    std::vector<bool> setup;
    bool feasible = false;
};

// Cheapest production plan for fixed per-period delivery totals: setups are
// enumerated, quantities fill the latest open setup first (which minimizes
// the supplier's carried stock for a fixed setup pattern).
ProductionCost best_production(const PublicProblem& pub, const std::vector<double>& totals) {
    int T = pub.horizon;
    ProductionCost best;

    std::vector<double> need(static_cast<size_t>(T), 0.0); // prefix shortfall vs initial stock
    double cum = 0.0;
    for (int t = 0; t < T; ++t) {
        cum += totals[static_cast<size_t>(t)];
        need[static_cast<size_t>(t)] = std::max(0.0, cum - pub.initial_inventory[0]);
    }

    for (unsigned mask = 0; mask < (1u << T); ++mask) {
        std::vector<double> p(static_cast<size_t>(T), 0.0);
        bool feasible = true;
        for (int t = 0; t < T && feasible; ++t) {
            double produced = 0.0;
            for (int tau = 0; tau <= t; ++tau) produced += p[static_cast<size_t>(tau)];
            double shortfall = need[static_cast<size_t>(t)] - produced;
            for (int tau = t; tau >= 0 && shortfall > kTol; --tau) {
                if (!(mask & (1u << tau))) continue;
                double add = std::min(pub.production_capacity - p[static_cast<size_t>(tau)], shortfall);
                if (add > 0) {
                    p[static_cast<size_t>(tau)] += add;
                    shortfall -= add;
                }
            }
            if (shortfall > kTol) feasible = false;
        }
        if (!feasible) continue;

        double cost = 0.0;
        double stock = pub.initial_inventory[0];
        for (int t = 0; t < T; ++t) {
            if (mask & (1u << t)) cost += pub.setup_cost;
            cost += pub.unit_production_cost * p[static_cast<size_t>(t)];
            stock += p[static_cast<size_t>(t)] - totals[static_cast<size_t>(t)];
            if (stock > pub.inventory_capacity[0] + kTol) {
                feasible = false;
                break;
            }
            cost += pub.supplier_holding_cost * stock;
        }
        if (!feasible) continue;

        if (!best.feasible || cost < best.cost - kTol) {
            best.feasible = true;
            best.cost = cost;
            best.quantity = p;
            best.setup.assign(static_cast<size_t>(T), false);
            for (int t = 0; t < T; ++t) best.setup[static_cast<size_t>(t)] = (mask & (1u << t)) != 0;
        }
    }
    return best;
}

} // namespace

bool oracle_in_bounds(const Instance& instance) {
    return instance.retailers() <= 4 && instance.horizon() <= 3 && instance.vehicles() == 1;
}

OracleResult solve_exact(const Instance& instance, const OracleLimits& limits) {
    if (!oracle_in_bounds(instance)) {
        throw std::invalid_argument(
            "exhaustive solver requires n <= 4, horizon <= 3 and a single vehicle");
    }
    const PublicProblem& pub = instance.shared();
    int n = pub.n_retailers;
    int T = pub.horizon;

    std::vector<std::vector<CandidateSchedule>> candidates(static_cast<size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) candidates[static_cast<size_t>(i)] = retailer_candidates(instance, i);

    // Exact tours for every retailer subset.
    std::vector<routing::Tour> tours(1u << n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> members;
        for (int i = 1; i <= n; ++i) {
            if (mask & (1u << (i - 1))) members.push_back(i);
        }
        tours[mask] = routing::solve_tsp_exact(pub.transport_cost, members);
    }

    OracleResult result;
    result.fingerprint = instance.fingerprint();
    double best_cost = 0.0;
    bool have_best = false;
    std::vector<size_t> best_pick;

    std::vector<size_t> pick(static_cast<size_t>(n) + 1, 0);
    auto started = std::chrono::steady_clock::now();

    while (true) {
        ++result.nodes_explored;
        if (result.nodes_explored > limits.max_nodes) {
            result.complete = false;
            break;
        }
        if (limits.max_seconds > 0 && (result.nodes_explored & 0xfff) == 0) {
            auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
            if (elapsed.count() > limits.max_seconds) {
                result.complete = false;
                break;
            }
        }

        double holding = 0.0;
        std::vector<double> totals(static_cast<size_t>(T), 0.0);
        bool load_ok = true;
        std::vector<unsigned> masks(static_cast<size_t>(T), 0u);
        for (int i = 1; i <= n; ++i) {
            const auto& schedule = candidates[static_cast<size_t>(i)][pick[static_cast<size_t>(i)]];
            holding += schedule.holding_cost;
            for (int t = 0; t < T; ++t) {
                double q = schedule.quantity[static_cast<size_t>(t)];
                if (q > 0.0) {
                    totals[static_cast<size_t>(t)] += q;
                    masks[static_cast<size_t>(t)] |= 1u << (i - 1);
                }
            }
        }
        for (int t = 0; t < T; ++t) {
            if (totals[static_cast<size_t>(t)] > pub.vehicle_capacity + kTol) load_ok = false;
        }

        if (load_ok) {
            double routing_cost = 0.0;
            for (int t = 0; t < T; ++t) routing_cost += tours[masks[static_cast<size_t>(t)]].cost;
            ProductionCost production = best_production(pub, totals);
            if (production.feasible) {
                double total = production.cost + holding + routing_cost;
                if (!have_best || total < best_cost - kTol) {
                    have_best = true;
                    best_cost = total;
                    best_pick = pick;
                }
            }
        }

        // odometer over per-retailer candidate lists, lexicographic
        int i = n;
        while (i >= 1) {
            if (++pick[static_cast<size_t>(i)] < candidates[static_cast<size_t>(i)].size()) break;
            pick[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 1) break;
    }

    if (!have_best) {
        throw std::domain_error("no feasible schedule combination within oracle bounds");
    }

    Plan plan(n, T, 1);
    std::vector<double> totals(static_cast<size_t>(T), 0.0);
    for (int i = 1; i <= n; ++i) {
        const auto& schedule = candidates[static_cast<size_t>(i)][best_pick[static_cast<size_t>(i)]];
        for (int t = 0; t < T; ++t) {
            double q = schedule.quantity[static_cast<size_t>(t)];
            if (q > 0.0) {
                plan.set_delivery(i, t, q, 0);
                totals[static_cast<size_t>(t)] += q;
            }
        }
    }
    for (int t = 0; t < T; ++t) {
        auto members = plan.neighborhood(t);
        if (!members.empty()) {
            unsigned mask = 0;
            for (int i : members) mask |= 1u << (i - 1);
            plan.set_route(0, t, tours[mask].nodes);
        }
    }
    ProductionCost production = best_production(pub, totals);
    plan.production = production.quantity;
    plan.setup = production.setup;

    result.cost = best_cost;
    result.plan = std::move(plan);
    return result;
}

double optimality_gap(double oracle_cost, double engine_cost) {
    if (std::abs(oracle_cost) <= kTol) {
        if (std::abs(engine_cost) <= kTol) return 0.0;
        throw std::domain_error("optimality gap undefined: oracle cost is zero");
    }
    return (engine_cost - oracle_cost) / oracle_cost;
}

} // namespace prppp
