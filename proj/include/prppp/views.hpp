#ifndef PRPPP_VIEWS_HPP
#define PRPPP_VIEWS_HPP

#include <vector>

#include "prppp/instance.hpp"
#include "prppp/plan.hpp"

namespace prppp {

/// What the coordinator sees: the shared problem data (no retailer holding
/// costs by construction) plus the current plan and its neighborhoods.
struct SupplierView {
    const PublicProblem* problem = nullptr;
    const Plan* plan = nullptr;
    std::vector<std::vector<int>> neighborhoods; // per period, ascending ids
};

SupplierView make_supplier_view(const PublicProblem& pub, const Plan& plan);

/// What one retailer sees of a plan state: its own private holding cost and
/// demand row, its own deliveries and stock, and the per-period price quotes
/// the supplier exposes. Shipping quotes exist only for periods where the
/// retailer has a delivery. Nothing about other retailers' costs or
/// quantities is present.
struct RetailerView {
    int id = 0;
    double holding_cost = 0.0;          // private h_c
    std::vector<int> demand;            // own row, size T
    std::vector<double> delivered;      // own q_ct, size T
    std::vector<double> inventory;      // own I_ct, size T
    std::vector<bool> member;           // c in Nb_t
    std::vector<double> shipping_quote; // route cost / nb_t where member, else 0
    std::vector<double> product_quote;  // (u p_t + f y_t + h0 I_0t) / n
    std::vector<std::vector<int>> neighbors;       // co-members for own periods
    std::vector<std::vector<double>> neighbor_cost; // arc costs to those co-members
};

RetailerView make_retailer_view(const Instance& instance, const Plan& plan, int retailer);

} // namespace prppp

#endif
