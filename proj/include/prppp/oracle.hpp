#ifndef PRPPP_ORACLE_HPP
#define PRPPP_ORACLE_HPP

#include <cstdint>
#include <string>

#include "prppp/instance.hpp"
#include "prppp/plan.hpp"

namespace prppp {

struct OracleLimits {
    std::uint64_t max_nodes = 20'000'000;
    double max_seconds = 0.0; // 0 = no time cap
};

struct OracleResult {
    double cost = 0.0;
    Plan plan;
    std::uint64_t nodes_explored = 0;
    std::string fingerprint;
    bool complete = true; // false when a limit cut the search short
};

/// Bounds accepted by the exhaustive solver.
bool oracle_in_bounds(const Instance& instance);

/// Exhaustive search over per-retailer assignments of demand periods to
/// delivery periods (filtered by each retailer's flow balance and cap),
/// with exact production scheduling and exact per-period routing. Exact
/// within that candidate set; globally exact when no inventory bound binds.
/// Requires n <= 4, horizon <= 3, one vehicle, integer demands; throws
/// std::invalid_argument otherwise.
OracleResult solve_exact(const Instance& instance, const OracleLimits& limits = {});

/// (engine cost - oracle cost) / oracle cost. Zero when both costs are
/// zero; throws std::domain_error when only the oracle cost is zero.
double optimality_gap(double oracle_cost, double engine_cost);

} // namespace prppp

#endif
