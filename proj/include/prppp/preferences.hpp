#ifndef PRPPP_PREFERENCES_HPP
#define PRPPP_PREFERENCES_HPP

#include <vector>

#include "prppp/instance.hpp"

namespace prppp {

/// One candidate delivery schedule for a single retailer: quantity per
/// period, its own holding cost, and how many periods carry a delivery.
struct DeliveryPattern {
    std::vector<double> quantity;   // size T
    double holding_cost = 0.0;      // sum_t h_c * I_ct under this pattern
    int delivery_periods = 0;
    bool just_in_time = false;
};

/// Enumerates the retailer's feasible delivery patterns (own flow balance
/// and inventory cap), ranked by ascending holding cost, then by fewer
/// delivery periods, then lexicographically by quantity vector, truncated
/// to `depth`. The just-in-time pattern is always kept in the list.
/// Throws ValidationError when no pattern fits under the inventory cap.
std::vector<DeliveryPattern> delivery_preferences(const Instance& instance,
                                                  int retailer,
                                                  int depth);

} // namespace prppp

#endif
