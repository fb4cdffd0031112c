#ifndef PRPPP_FEASIBILITY_HPP
#define PRPPP_FEASIBILITY_HPP

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "prppp/instance.hpp"
#include "prppp/plan.hpp"

namespace prppp {

enum class ConstraintId {
    FlowBalanceSupplier,
    FlowBalanceRetailer,
    SetupBigM,
    SupplierInventoryCap,
    RetailerInventoryCap,
    VisitBigM,
    SingleVehicleVisit,
    FlowConservation,
    VehicleCapacity,
    Subtour,
    Domain,
};

const char* constraint_name(ConstraintId id);

struct Violation {
    ConstraintId id;
    int node = -1;    // -1 when not applicable
    int vehicle = -1; // 0-based, -1 when not applicable
    int period = -1;  // 0-based, -1 when not applicable
    double magnitude = 0.0;
    std::string detail;

    nlohmann::json to_json() const;
};

/// Setup big-M: the smaller of the production capacity and the demand still
/// outstanding from `period` on.
double big_m_production(const PublicProblem& pub, int period);

/// Visit big-M: min(Q, L_i, demand of retailer i from `period` on).
double big_m_visit(const PublicProblem& pub, int retailer, int period);

/// Checks every lot-sizing, load and routing constraint of the model and
/// returns one Violation per breach (empty means feasible). Never throws;
/// all problems are reported as violations.
std::vector<Violation> check_feasibility(const Instance& instance, const Plan& plan);
std::vector<Violation> check_feasibility(const PublicProblem& pub, const Plan& plan);

} // namespace prppp

#endif
