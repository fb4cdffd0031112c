#ifndef PRPPP_ROUTING_HPP
#define PRPPP_ROUTING_HPP

#include <optional>
#include <utility>
#include <vector>

#include "prppp/instance.hpp"

namespace prppp::routing {

/// Largest node count (including the depot) handled by the exact solver.
inline constexpr int kExactLimit = 12;

struct Tour {
    std::vector<int> nodes; // 0, r1, ..., rk, 0; {0,0} when no retailers
    double cost = 0.0;
};

/// One vehicle's trip in one period.
struct Route {
    int vehicle = 0;
    int period = 0;
    std::vector<int> nodes;
    double load = 0.0;
    double cost = 0.0;
};

double tour_cost(const CostMatrix& c, const std::vector<int>& nodes);

/// Minimum-cost cycle through node 0 over the given retailers, by
/// Held-Karp dynamic programming. Ties resolve to the lexicographically
/// smallest node sequence. Throws std::invalid_argument above kExactLimit.
Tour solve_tsp_exact(const CostMatrix& c, const std::vector<int>& retailers);

/// Nearest-neighbour construction from node 0 (ties to the lowest index)
/// followed by first-improvement 2-opt with a fixed scan order.
Tour solve_tsp_heuristic(const CostMatrix& c, const std::vector<int>& retailers);

/// Exact when small enough, heuristic otherwise.
Tour solve_tsp(const CostMatrix& c, const std::vector<int>& retailers);

/// First-fit-decreasing assignment of one period's deliveries to at most
/// `max_vehicles` vehicles of capacity Q, then one tour per vehicle.
/// Deliveries are (retailer, quantity) pairs. Returns nullopt when the
/// deliveries cannot be packed (callers reject the causing state).
std::optional<std::vector<Route>> assign_vehicles(const CostMatrix& c,
                                                  std::vector<std::pair<int, double>> deliveries,
                                                  double vehicle_capacity,
                                                  int max_vehicles,
                                                  int period = 0);

} // namespace prppp::routing

#endif
