#ifndef PRPPP_PLAN_HPP
#define PRPPP_PLAN_HPP

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "prppp/instance.hpp"

namespace prppp {

/// A full solution state: per-retailer-per-period delivery quantities, the
/// vehicle routes that carry them, and the production plan. Inventories are
/// always derived, never stored. Plans are value types; operations that
/// modify a plan take a copy and return the new one.
class Plan {
public:
    Plan() = default;
    Plan(int n_retailers, int horizon, int n_vehicles);

    static Plan from_json(const nlohmann::json& doc, const PublicProblem& pub);
    static Plan from_file(const std::string& path, const PublicProblem& pub);
    nlohmann::json to_json() const;
    std::string canonical_dump() const;

    int retailers() const { return n_; }
    int horizon() const { return horizon_; }
    int vehicles() const { return m_; }

    // periods and vehicles are 0-based here; node ids are 0..n with 0 = supplier
    double quantity(int retailer, int period) const;
    int vehicle_of(int retailer, int period) const; // -1 when no delivery
    void set_delivery(int retailer, int period, double qty, int vehicle);
    void clear_delivery(int retailer, int period);

    const std::vector<int>& route(int vehicle, int period) const;
    void set_route(int vehicle, int period, std::vector<int> nodes);
    void clear_routes(int period);

    std::vector<double> production;  // p_t, size horizon
    std::vector<bool> setup;         // y_t, size horizon

    /// Retailers with a positive delivery in `period`, ascending.
    std::vector<int> neighborhood(int period) const;
    double period_total(int period) const;

    /// Sum of arc costs over all routes of `period`.
    double routing_cost(const CostMatrix& c, int period) const;
    double routing_cost(const CostMatrix& c) const;

    bool operator==(const Plan& other) const = default;

private:
    int n_ = 0, horizon_ = 0, m_ = 0;
    std::vector<std::vector<double>> qty_;       // [n+1][T], row 0 unused
    std::vector<std::vector<int>> veh_;          // [n+1][T], -1 = none
    std::vector<std::vector<std::vector<int>>> routes_; // [m][T]
};

/// Flow-balance recurrences from the lot-sizing side of the model:
///   I0t = I0,t-1 + p_t - sum_i q_it     and     Iit = Ii,t-1 + q_it - d_it.
/// Returns the (n+1) x horizon matrix. Negative entries are legal outputs
/// here; the feasibility checker flags them.
std::vector<std::vector<double>> simulate_inventory(const PublicProblem& pub, const Plan& plan);

} // namespace prppp

#endif
