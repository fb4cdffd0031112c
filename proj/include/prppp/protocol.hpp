#ifndef PRPPP_PROTOCOL_HPP
#define PRPPP_PROTOCOL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prppp/instance.hpp"
#include "prppp/plan.hpp"
#include "prppp/views.hpp"

namespace prppp {

enum class TxnKind { Removal, Insertion, Substitution };

const char* txn_kind_name(TxnKind kind);

/// One delivery change owned by a single retailer: `qty` units leave
/// `from_period` and join `to_period`. The retailer's total delivered
/// quantity over the horizon is conserved by every move.
struct Move {
    int retailer = 0;
    int from_period = 0; // 0-based
    int to_period = 0;   // 0-based
    double qty = 0.0;

    bool operator==(const Move&) const = default;
};

/// One agenda proposal: a removal or insertion carries one move, a
/// substitution carries two moves on two distinct retailers.
struct Transaction {
    long id = 0;
    TxnKind kind = TxnKind::Removal;
    std::vector<Move> moves;
    std::vector<int> negotiators; // move owners, ascending
    double estimated_saving = 0.0; // supplier-side estimate
};

/// Shared record of the negotiation state: the initial solution, the
/// current solution, and a revision counter that advances exactly once per
/// accepted transaction. The current plan is feasible at every revision.
class PlanningBoard {
public:
    PlanningBoard(const Instance& instance, Plan initial);

    const Instance& instance() const { return *instance_; }
    const Plan& initial_plan() const { return initial_; }
    const Plan& current_plan() const { return current_; }
    int revision() const { return revision_; }

    SupplierView supplier_view() const;
    RetailerView retailer_view(int retailer) const;

    /// Applies an already-approved move subset: deliveries updated, affected
    /// routes rebuilt, production re-planned only when the supplier's stock
    /// cannot cover the new timing, feasibility re-checked. Returns false and
    /// leaves the board untouched when the result would be infeasible.
    bool apply(const std::vector<Move>& moves);

private:
    const Instance* instance_;
    Plan initial_;
    Plan current_;
    int revision_ = 0;
};

/// Result of applying a move set to a plan without committing it anywhere.
struct MoveOutcome {
    Plan plan;
    std::vector<int> affected_periods; // ascending, 0-based
    bool production_changed = false;
};

/// Pure plan surgery used by the board, the agenda builder and the
/// negotiation phase alike: move quantities, rebuild routes of affected
/// periods, re-plan production if the current one no longer covers the
/// deliveries. Returns nullopt when the result is infeasible (packing,
/// capacity or flow balance).
std::optional<MoveOutcome> apply_moves(const PublicProblem& pub,
                                       const Plan& base,
                                       const std::vector<Move>& moves);

/// Retailers asked to vote: everyone with a delivery, before or after, in a
/// period whose neighborhood membership changes, plus the negotiators.
/// Periods that only see quantity changes contribute no voters.
std::vector<int> voter_set(const PlanningBoard& board,
                           const Transaction& txn,
                           const std::vector<Move>& applied_moves);

struct OutcomeEval {
    std::vector<int> applied;             // retailer ids whose move is applied
    std::map<int, double> negotiator_deltas; // every negotiator's delta
    double delta_sum = 0.0;               // over all negotiators
    bool feasible = false;
    bool admissible = false; // feasible and every applied owner gains strictly
};

struct NegotiationResult {
    std::vector<OutcomeEval> outcomes; // fixed enumeration order
    std::vector<int> chosen;           // applied ids; empty = rejected
};

/// Enumerates every yes/no vector over the transaction's moves, keeps the
/// outcomes where each applied-move owner strictly gains, and picks the
/// admissible non-empty outcome with the largest negotiator delta sum
/// (ties to the lexicographically smallest applied-id vector).
NegotiationResult negotiate_joint_outcome(const PlanningBoard& board, const Transaction& txn);

struct VoteRecord {
    std::map<int, double> deltas; // per voter
    int favor = 0;
    int against = 0;
    std::optional<bool> supplier_tiebreak; // engaged only on a tie
    bool result = false;
};

/// Majority of strictly positive deltas wins; on a tie the supplier's vote
/// decides. favor + against always equals the voter count.
VoteRecord tally_votes(const std::map<int, double>& voter_deltas, bool supplier_tiebreak_in_favor);

/// Full record of one processed transaction, written to the trace.
struct TransactionRecord {
    long id = 0;
    TxnKind kind = TxnKind::Removal;
    std::vector<Move> moves;
    double estimated_saving = 0.0;
    bool stale = false;
    std::vector<OutcomeEval> outcomes;
    std::vector<int> chosen;
    std::map<int, double> voter_deltas;
    int favor = 0;
    int against = 0;
    std::optional<bool> tiebreak;
    bool accepted = false;
    int revision = 0; // board revision after processing
};

/// Runs one transaction through negotiation, voting and (on success) the
/// board update. The board advances only when both phases pass.
TransactionRecord process_transaction(PlanningBoard& board, const Transaction& txn);

} // namespace prppp

#endif
