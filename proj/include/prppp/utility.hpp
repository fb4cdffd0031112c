#ifndef PRPPP_UTILITY_HPP
#define PRPPP_UTILITY_HPP

#include <vector>

#include "prppp/views.hpp"

namespace prppp {

/// Per-period cost breakdown behind one retailer's utility. The utility is
/// the negated sum of every term: U_c = -(inventory + shipping + production).
struct UtilityReport {
    struct PeriodTerms {
        double inventory = 0.0;  // h_c * I_ct
        double shipping = 0.0;   // route_t / nb_t when c is in Nb_t
        double production = 0.0; // (u p_t + f y_t + h0 I_0t) / n
    };
    int retailer = 0;
    std::vector<PeriodTerms> periods;
    double total = 0.0;
};

UtilityReport total_utility(const RetailerView& view);

struct DeltaReport {
    int retailer = 0;
    std::vector<std::pair<int, double>> per_period; // (period, delta utility)
    double total = 0.0;
};

/// Delta utility of one retailer between two plan states over the affected
/// periods. The production term enters only when the production side of the
/// plan actually changed; otherwise it cancels and is skipped.
DeltaReport delta_utility(const RetailerView& before,
                          const RetailerView& after,
                          const std::vector<int>& affected_periods,
                          bool production_changed);

/// A retailer negotiates or votes in favor only on a strictly positive
/// delta; zero counts as against.
inline bool retailer_decide(double delta) { return delta > 0.0; }

} // namespace prppp

#endif
