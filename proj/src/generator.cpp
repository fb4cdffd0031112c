#include "prppp/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace prppp {

namespace {

// Thin deterministic wrapper; draws never go through the distribution
// classes, whose output is implementation-defined.
struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}

    std::uint64_t next() { return engine(); }

    int uniform_int(int lo, int hi) { // inclusive
        if (hi <= lo) return lo;
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

    double chance() { // [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
};

} // namespace

GeneratedInstance generate_instance(std::uint64_t seed, int n_retailers, int horizon,
                                    const GeneratorProfile& profile) {
    std::vector<std::string> notes;
    auto clamp_int = [&](int value, int lo, const char* name) {
        if (value < lo) {
            notes.push_back(std::string(name) + " clamped to " + std::to_string(lo));
            return lo;
        }
        return value;
    };
    int n = clamp_int(n_retailers, 1, "n_retailers");
    int T = clamp_int(horizon, 1, "horizon");
    int m = clamp_int(profile.n_vehicles, 1, "n_vehicles");
    int dmin = std::max(0, profile.demand_min);
    int dmax = std::max({1, dmin, profile.demand_max});
    if (dmin != profile.demand_min || dmax != profile.demand_max) {
        notes.push_back("demand range clamped to [" + std::to_string(dmin) + ", " +
                        std::to_string(dmax) + "]");
    }

    Rng rng(seed);

    PublicProblem pub;
    pub.n_retailers = n;
    pub.horizon = T;
    pub.n_vehicles = m;
    pub.coord_scale = profile.scale > 0 ? profile.scale : 1.0;

    std::vector<std::array<double, 2>> coords(static_cast<size_t>(n) + 1);
    int clo = static_cast<int>(profile.coord_min);
    int chi = std::max(clo + 1, static_cast<int>(profile.coord_max));
    for (auto& c : coords) {
        c[0] = rng.uniform_int(clo, chi);
        c[1] = rng.uniform_int(clo, chi);
    }
    pub.coordinates = coords;
    size_t nodes = coords.size();
    pub.transport_cost.assign(nodes, std::vector<double>(nodes, 0.0));
    for (size_t i = 0; i < nodes; ++i) {
        for (size_t j = i + 1; j < nodes; ++j) {
            double dx = coords[i][0] - coords[j][0];
            double dy = coords[i][1] - coords[j][1];
            double cost = round2(pub.coord_scale * std::sqrt(dx * dx + dy * dy));
            pub.transport_cost[i][j] = cost;
            pub.transport_cost[j][i] = cost;
        }
    }

    pub.unit_production_cost =
        rng.uniform_int(static_cast<int>(profile.unit_cost_min), static_cast<int>(profile.unit_cost_max));
    pub.setup_cost =
        rng.uniform_int(static_cast<int>(profile.setup_cost_min), static_cast<int>(profile.setup_cost_max));

    std::vector<double> holding(nodes, 0.0);
    holding[0] = rng.uniform_int(0, static_cast<int>(profile.supplier_holding_max));
    for (size_t i = 1; i < nodes; ++i) {
        holding[i] = rng.uniform_int(static_cast<int>(profile.holding_min),
                                     static_cast<int>(profile.holding_max));
    }
    pub.supplier_holding_cost = holding[0];

    pub.demand.assign(nodes, std::vector<int>(static_cast<size_t>(T), 0));
    for (int i = 1; i <= n; ++i) {
        int total = 0;
        for (int t = 0; t < T; ++t) {
            int d = 0;
            if (rng.chance() >= profile.zero_demand_share) d = rng.uniform_int(dmin, dmax);
            pub.demand[static_cast<size_t>(i)][static_cast<size_t>(t)] = d;
            total += d;
        }
        if (total == 0) { // degenerate rows are rejected at load, so fix them here
            int t = rng.uniform_int(0, T - 1);
            pub.demand[static_cast<size_t>(i)][static_cast<size_t>(t)] =
                rng.uniform_int(std::max(1, dmin), dmax);
        }
    }

    double max_period = 0.0;
    for (int t = 0; t < T; ++t) max_period = std::max(max_period, pub.period_demand(t));
    max_period = std::max(max_period, 1.0);

    pub.production_capacity = std::ceil(std::max(1.25, profile.capacity_slack) * max_period);
    pub.vehicle_capacity = max_period;

    pub.inventory_capacity.assign(nodes, 0.0);
    pub.initial_inventory.assign(nodes, 0.0);
    pub.inventory_capacity[0] = std::max(1.0, pub.remaining_demand(0));
    for (int i = 1; i <= n; ++i) {
        int peak = 0;
        for (int t = 0; t < T; ++t) {
            peak = std::max(peak, pub.demand[static_cast<size_t>(i)][static_cast<size_t>(t)]);
        }
        pub.inventory_capacity[static_cast<size_t>(i)] = 2.0 * peak;
    }

    return GeneratedInstance{Instance::make(std::move(pub), std::move(holding)), std::move(notes)};
}

} // namespace prppp
