#include "prppp/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace prppp::routing {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;
} // namespace

double tour_cost(const CostMatrix& c, const std::vector<int>& nodes) {
    double total = 0.0;
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
        total += c[static_cast<size_t>(nodes[i])][static_cast<size_t>(nodes[i + 1])];
    }
    return total;
}

Tour solve_tsp_exact(const CostMatrix& c, const std::vector<int>& retailers) {
    int k = static_cast<int>(retailers.size());
    if (k + 1 > kExactLimit) {
        throw std::invalid_argument("exact tour limited to " + std::to_string(kExactLimit) +
                                    " nodes; use the heuristic");
    }
    if (k == 0) return Tour{{0, 0}, 0.0};

    std::vector<int> ids(retailers);
    std::sort(ids.begin(), ids.end());

    auto cost = [&](int a, int b) {
        return c[static_cast<size_t>(a)][static_cast<size_t>(b)];
    };

    // tail[S][j]: cheapest path that starts at ids[j], visits everything in S
    // (j included), and returns to the depot.
    size_t full = (1u << k) - 1u;
    std::vector<std::vector<double>> tail(full + 1, std::vector<double>(static_cast<size_t>(k), kInf));
    for (int j = 0; j < k; ++j) {
        tail[1u << j][static_cast<size_t>(j)] = cost(ids[static_cast<size_t>(j)], 0);
    }
    for (size_t mask = 1; mask <= full; ++mask) {
        for (int j = 0; j < k; ++j) {
            if (!(mask & (1u << j))) continue;
            if (tail[mask][static_cast<size_t>(j)] < kInf) continue;
            size_t rest = mask & ~(1u << j);
            if (rest == 0) continue;
            double best = kInf;
            for (int v = 0; v < k; ++v) {
                if (!(rest & (1u << v))) continue;
                double cand = cost(ids[static_cast<size_t>(j)], ids[static_cast<size_t>(v)]) +
                              tail[rest][static_cast<size_t>(v)];
                best = std::min(best, cand);
            }
            tail[mask][static_cast<size_t>(j)] = best;
        }
    }

    // Greedy front-to-back reconstruction: at each step take the smallest id
    // consistent with the optimal remaining cost, which yields the
    // lexicographically smallest optimal sequence.
    double opt = kInf;
    for (int j = 0; j < k; ++j) {
        opt = std::min(opt, cost(0, ids[static_cast<size_t>(j)]) + tail[full][static_cast<size_t>(j)]);
    }

    std::vector<int> seq{0};
    size_t mask = full;
    int current = 0;
    double remaining = opt;
    while (mask != 0) {
        for (int j = 0; j < k; ++j) { // ids sorted, so the first hit is the smallest
            if (!(mask & (1u << j))) continue;
            if (std::abs(cost(current, ids[static_cast<size_t>(j)]) + tail[mask][static_cast<size_t>(j)] -
                         remaining) <= kEps) {
                seq.push_back(ids[static_cast<size_t>(j)]);
                current = ids[static_cast<size_t>(j)];
                remaining = tail[mask][static_cast<size_t>(j)];
                mask &= ~(1u << j);
                break;
            }
        }
    }
    seq.push_back(0);
    return Tour{std::move(seq), opt};
}

Tour solve_tsp_heuristic(const CostMatrix& c, const std::vector<int>& retailers) {
    if (retailers.empty()) return Tour{{0, 0}, 0.0};

    std::vector<int> ids(retailers);
    std::sort(ids.begin(), ids.end());

    // Nearest neighbour from the depot, ties to the lowest index.
    std::vector<int> seq{0};
    std::vector<bool> used(ids.size(), false);
    int current = 0;
    for (size_t step = 0; step < ids.size(); ++step) {
        int pick = -1;
        double best = kInf;
        for (size_t j = 0; j < ids.size(); ++j) {
            if (used[j]) continue;
            double d = c[static_cast<size_t>(current)][static_cast<size_t>(ids[j])];
            if (d < best - kEps) {
                best = d;
                pick = static_cast<int>(j);
            }
        }
        used[static_cast<size_t>(pick)] = true;
        seq.push_back(ids[static_cast<size_t>(pick)]);
        current = ids[static_cast<size_t>(pick)];
    }
    seq.push_back(0);

    // First-improvement 2-opt, fixed scan order, restart after every move.
    bool improved = true;
    while (improved) {
        improved = false;
        size_t len = seq.size();
        for (size_t a = 0; a + 2 < len && !improved; ++a) {
            for (size_t b = a + 1; b + 1 < len && !improved; ++b) {
                // reverse seq[a+1..b]; delta uses the symmetric-cost shortcut
                double before = c[static_cast<size_t>(seq[a])][static_cast<size_t>(seq[a + 1])] +
                                c[static_cast<size_t>(seq[b])][static_cast<size_t>(seq[b + 1])];
                double after = c[static_cast<size_t>(seq[a])][static_cast<size_t>(seq[b])] +
                               c[static_cast<size_t>(seq[a + 1])][static_cast<size_t>(seq[b + 1])];
                if (after < before - 1e-9) {
                    std::reverse(seq.begin() + static_cast<std::ptrdiff_t>(a) + 1,
                                 seq.begin() + static_cast<std::ptrdiff_t>(b) + 1);
                    improved = true;
                }
            }
        }
    }
    return Tour{seq, tour_cost(c, seq)};
}

Tour solve_tsp(const CostMatrix& c, const std::vector<int>& retailers) {
    if (static_cast<int>(retailers.size()) + 1 <= kExactLimit) {
        return solve_tsp_exact(c, retailers);
    }
    return solve_tsp_heuristic(c, retailers);
}

std::optional<std::vector<Route>> assign_vehicles(const CostMatrix& c,
                                                  std::vector<std::pair<int, double>> deliveries,
                                                  double vehicle_capacity,
                                                  int max_vehicles,
                                                  int period) {
    std::erase_if(deliveries, [](const auto& d) { return d.second <= 0.0; });
    if (deliveries.empty()) return std::vector<Route>{};

    for (const auto& [retailer, qty] : deliveries) {
        (void)retailer;
        if (qty > vehicle_capacity + 1e-9) return std::nullopt;
    }

    // First-fit decreasing by quantity; equal quantities by retailer id.
    std::sort(deliveries.begin(), deliveries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    std::vector<std::vector<int>> bins;     // retailer ids per vehicle
    std::vector<double> loads;
    for (const auto& [retailer, qty] : deliveries) {
        bool placed = false;
        for (size_t b = 0; b < bins.size(); ++b) {
            if (loads[b] + qty <= vehicle_capacity + 1e-9) {
                bins[b].push_back(retailer);
                loads[b] += qty;
                placed = true;
                break;
            }
        }
        if (!placed) {
            bins.push_back({retailer});
            loads.push_back(qty);
        }
    }
    if (static_cast<int>(bins.size()) > max_vehicles) return std::nullopt;

    std::vector<Route> routes;
    routes.reserve(bins.size());
    for (size_t b = 0; b < bins.size(); ++b) {
        Tour tour = solve_tsp(c, bins[b]);
        routes.push_back(Route{static_cast<int>(b), period, tour.nodes, loads[b], tour.cost});
    }
    return routes;
}

} // namespace prppp::routing
