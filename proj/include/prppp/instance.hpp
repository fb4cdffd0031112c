#ifndef PRPPP_INSTANCE_HPP
#define PRPPP_INSTANCE_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace prppp {

using CostMatrix = std::vector<std::vector<double>>;

/// Raised when an instance or plan document fails schema or invariant
/// validation. The message names the offending field and index.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Problem data visible to the coordinating supplier: everything except the
/// retailers' holding costs. Kept as a separate struct so supplier-side code
/// can be typed against it and cannot touch private data by construction.
struct PublicProblem {
    int n_retailers = 0;   // retailers 1..n, node 0 is the supplier
    int horizon = 0;       // periods 1..l
    int n_vehicles = 1;

    double unit_production_cost = 0.0;  // u
    double setup_cost = 0.0;            // f
    double supplier_holding_cost = 0.0; // h_0

    // demand[i][t], i in 0..n (row 0 all zero), t in 0..horizon-1
    std::vector<std::vector<int>> demand;

    CostMatrix transport_cost; // symmetric, zero diagonal, (n+1)x(n+1)

    double production_capacity = 0.0; // C
    double vehicle_capacity = 0.0;    // Q
    std::vector<double> inventory_capacity; // L_i, size n+1
    std::vector<double> initial_inventory;  // I_i0, size n+1

    double coord_scale = 1.0;
    std::optional<std::vector<std::array<double, 2>>> coordinates;

    int node_count() const { return n_retailers + 1; }
    double total_demand(int retailer) const;
    double period_demand(int period) const;       // sum over retailers
    double remaining_demand(int period) const;    // sum over t' >= period
    double remaining_demand(int retailer, int period) const;
};

/// Full immutable problem data, including the private per-retailer holding
/// costs. Everything supplier-side goes through shared(); holding_cost() is
/// the single access point for private data.
class Instance {
public:
    static Instance from_json(const nlohmann::json& doc);
    static Instance from_file(const std::string& path);
    static Instance make(PublicProblem pub, std::vector<double> holding);

    const PublicProblem& shared() const { return pub_; }

    /// h_i for any node; i in 0..n. Entries 1..n are private to retailer i.
    double holding_cost(int node) const { return holding_.at(static_cast<size_t>(node)); }
    const std::vector<double>& holding_costs() const { return holding_; }

    nlohmann::json to_json() const;
    std::string fingerprint() const;

    int retailers() const { return pub_.n_retailers; }
    int horizon() const { return pub_.horizon; }
    int vehicles() const { return pub_.n_vehicles; }

private:
    Instance() = default;
    PublicProblem pub_;
    std::vector<double> holding_; // h_0..h_n
};

/// Half-up rounding to two decimals, used when deriving transport costs
/// from coordinates so results do not depend on the platform's rounding.
double round2(double v);

} // namespace prppp

#endif
