#ifndef PRPPP_GENERATOR_HPP
#define PRPPP_GENERATOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "prppp/instance.hpp"

namespace prppp {

/// Parameter ranges for random instances. Capacities are derived from the
/// drawn demands so every generated instance admits a feasible solution.
struct GeneratorProfile {
    int n_vehicles = 1;
    int demand_min = 5;
    int demand_max = 25;
    double zero_demand_share = 0.35; // chance a (retailer, period) has no demand
    double coord_min = 0.0;
    double coord_max = 100.0;
    double scale = 1.0;
    double unit_cost_min = 1.0;
    double unit_cost_max = 10.0;
    double setup_cost_min = 100.0;
    double setup_cost_max = 1500.0;
    double holding_min = 1.0;
    double holding_max = 9.0;
    double supplier_holding_max = 3.0;
    double capacity_slack = 1.25; // C = slack * max period demand
};

struct GeneratedInstance {
    Instance instance;
    std::vector<std::string> clamp_notes; // non-empty when inputs were clamped
};

/// Deterministic for a given seed; out-of-range shape parameters are
/// clamped and the clamping reported rather than rejected.
GeneratedInstance generate_instance(std::uint64_t seed, int n_retailers, int horizon,
                                    const GeneratorProfile& profile = {});

} // namespace prppp

#endif
