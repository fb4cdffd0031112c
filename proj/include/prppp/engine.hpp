#ifndef PRPPP_ENGINE_HPP
#define PRPPP_ENGINE_HPP

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "prppp/instance.hpp"
#include "prppp/plan.hpp"
#include "prppp/preferences.hpp"
#include "prppp/protocol.hpp"
#include "prppp/views.hpp"

namespace prppp {

struct EngineConfig {
    int max_rounds = 50;
    int agenda_size = 20;
    int stall_rounds = 1;
    int preference_depth = 5;
    long seed = 0;

    static EngineConfig from_json(const nlohmann::json& doc);
    nlohmann::json to_json() const;
};

/// Transactions the supplier wants to negotiate this round, ordered by
/// descending supplier-estimated savings. Estimates use only the shared
/// view: routing and production effects, never retailer holding costs.
using Agenda = std::vector<Transaction>;

/// Combines the first delivery preference of each retailer into a plan,
/// repairing capacity conflicts by advancing the smallest offending
/// deliveries to the nearest earlier feasible period and falling back to
/// deeper preference patterns in retailer-index order.
/// Throws ValidationError when no feasible combination exists.
Plan initial_solution(const Instance& instance,
                      const std::vector<std::vector<DeliveryPattern>>& preferences);

Agenda propose_agenda(const SupplierView& view, const EngineConfig& config, long next_id = 1);

struct RunStats {
    int rounds = 0;
    std::map<std::string, int> proposed; // by kind
    std::map<std::string, int> accepted; // by kind
};

struct RunResult {
    Plan final_plan;
    std::vector<TransactionRecord> records;
    RunStats stats;
};

/// The full improvement loop: delivery preferences, initial solution, then
/// rounds of agenda proposal, negotiation and voting until no transaction
/// lands for `stall_rounds` consecutive rounds or `max_rounds` is reached.
/// Deterministic for a given (instance, config).
RunResult improve(const Instance& instance, const EngineConfig& config);

/// Stop when the last `stall_rounds` full agenda passes accepted nothing,
/// or the round cap is reached. `accepted_per_round` has one entry per
/// completed round.
bool stopping_criterion(const std::vector<int>& accepted_per_round, const EngineConfig& config);

} // namespace prppp

#endif
