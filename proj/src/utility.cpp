#include "prppp/utility.hpp"

#include <algorithm>

namespace prppp {

UtilityReport total_utility(const RetailerView& view) {
    UtilityReport report;
    report.retailer = view.id;
    size_t T = view.demand.size();
    report.periods.resize(T);
    double sum = 0.0;
    for (size_t t = 0; t < T; ++t) {
        auto& terms = report.periods[t];
        terms.inventory = view.holding_cost * view.inventory[t];
        terms.shipping = view.shipping_quote[t];
        terms.production = view.product_quote[t];
        sum += terms.inventory + terms.shipping + terms.production;
    }
    report.total = -sum;
    return report;
}

DeltaReport delta_utility(const RetailerView& before,
                          const RetailerView& after,
                          const std::vector<int>& affected_periods,
                          bool production_changed) {
    DeltaReport report;
    report.retailer = before.id;
    for (int t : affected_periods) {
        size_t u = static_cast<size_t>(t);
        double term_before = before.holding_cost * before.inventory[u] + before.shipping_quote[u];
        double term_after = after.holding_cost * after.inventory[u] + after.shipping_quote[u];
        if (production_changed) {
            term_before += before.product_quote[u];
            term_after += after.product_quote[u];
        }
        double delta = term_before - term_after; // utilities are negated costs
        report.per_period.emplace_back(t, delta);
        report.total += delta;
    }
    return report;
}

} // namespace prppp
