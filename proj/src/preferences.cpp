#include "prppp/preferences.hpp"

#include <algorithm>
#include <map>

namespace prppp {

namespace {

constexpr std::uint64_t kEnumerationCap = 2'000'000;

struct Enumerator {
    const PublicProblem& pub;
    double holding;
    int retailer;
    int T;
    std::vector<int> demand_periods; // 0-based, ascending
    std::vector<double> quantity;    // scratch, size T
    double stock_assigned = 0.0;
    std::uint64_t visited = 0;
    std::map<std::vector<double>, DeliveryPattern> found;

    void evaluate() {
        // Own flow balance and cap under this quantity vector.
        double inv = pub.initial_inventory[static_cast<size_t>(retailer)];
        double cost = 0.0;
        int periods_used = 0;
        for (int t = 0; t < T; ++t) {
            double q = quantity[static_cast<size_t>(t)];
            if (q > 0.0) ++periods_used;
            if (inv + q > pub.inventory_capacity[static_cast<size_t>(retailer)] + 1e-9) return;
            inv = inv + q - pub.demand[static_cast<size_t>(retailer)][static_cast<size_t>(t)];
            if (inv < -1e-9) return;
            cost += holding * inv;
        }
        DeliveryPattern pattern;
        pattern.quantity = quantity;
        pattern.holding_cost = cost;
        pattern.delivery_periods = periods_used;
        pattern.just_in_time = true;
        for (int t = 0; t < T; ++t) {
            if (quantity[static_cast<size_t>(t)] !=
                static_cast<double>(pub.demand[static_cast<size_t>(retailer)][static_cast<size_t>(t)])) {
                pattern.just_in_time = false;
                break;
            }
        }
        found.emplace(pattern.quantity, std::move(pattern));
    }

    // Options per demand period, tried in-period first so the very first
    // complete assignment is the just-in-time pattern.
    void recurse(size_t idx) {
        if (visited >= kEnumerationCap) return;
        if (idx == demand_periods.size()) {
            ++visited;
            evaluate();
            return;
        }
        int t = demand_periods[idx];
        double d = pub.demand[static_cast<size_t>(retailer)][static_cast<size_t>(t)];
        for (int target = t; target >= 0; --target) {
            quantity[static_cast<size_t>(target)] += d;
            recurse(idx + 1);
            quantity[static_cast<size_t>(target)] -= d;
        }
        // covered entirely from initial stock
        if (stock_assigned + d <= pub.initial_inventory[static_cast<size_t>(retailer)] + 1e-9) {
            stock_assigned += d;
            recurse(idx + 1);
            stock_assigned -= d;
        }
    }
};

} // namespace

std::vector<DeliveryPattern> delivery_preferences(const Instance& instance, int retailer, int depth) {
    const PublicProblem& pub = instance.shared();
    Enumerator en{pub, instance.holding_cost(retailer), retailer, pub.horizon, {}, {}, 0.0, 0, {}};
    for (int t = 0; t < pub.horizon; ++t) {
        if (pub.demand[static_cast<size_t>(retailer)][static_cast<size_t>(t)] > 0) {
            en.demand_periods.push_back(t);
        }
    }
    if (en.demand_periods.empty()) {
        throw ValidationError("retailer " + std::to_string(retailer) + " has no demand");
    }
    en.quantity.assign(static_cast<size_t>(pub.horizon), 0.0);
    en.recurse(0);

    if (en.found.empty()) {
        throw ValidationError("retailer " + std::to_string(retailer) +
                              " has no delivery pattern under its inventory cap");
    }

    std::vector<DeliveryPattern> ranked;
    ranked.reserve(en.found.size());
    for (auto& [q, pattern] : en.found) ranked.push_back(std::move(pattern));
    std::stable_sort(ranked.begin(), ranked.end(), [](const DeliveryPattern& a, const DeliveryPattern& b) {
        if (a.holding_cost != b.holding_cost) return a.holding_cost < b.holding_cost;
        if (a.delivery_periods != b.delivery_periods) return a.delivery_periods < b.delivery_periods;
        return a.quantity < b.quantity;
    });

    if (depth < 1) depth = 1;
    if (static_cast<int>(ranked.size()) > depth) {
        size_t jit_idx = ranked.size();
        for (size_t i = 0; i < ranked.size(); ++i) {
            if (ranked[i].just_in_time) {
                jit_idx = i;
                break;
            }
        }
        bool reinsert = jit_idx < ranked.size() && jit_idx >= static_cast<size_t>(depth);
        DeliveryPattern jit_copy;
        if (reinsert) jit_copy = ranked[jit_idx];
        ranked.resize(static_cast<size_t>(depth));
        if (reinsert) ranked.back() = jit_copy; // just-in-time always stays available
    }
    return ranked;
}

} // namespace prppp
