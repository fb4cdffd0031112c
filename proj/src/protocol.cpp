#include "prppp/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "prppp/costs.hpp"
#include "prppp/feasibility.hpp"
#include "prppp/routing.hpp"
#include "prppp/utility.hpp"

namespace prppp {

namespace {
constexpr double kTol = 1e-9;
} // namespace

const char* txn_kind_name(TxnKind kind) {
    switch (kind) {
        case TxnKind::Removal: return "removal";
        case TxnKind::Insertion: return "insertion";
        case TxnKind::Substitution: return "substitution";
    }
    return "?";
}

std::optional<MoveOutcome> apply_moves(const PublicProblem& pub,
                                       const Plan& base,
                                       const std::vector<Move>& moves) {
    MoveOutcome outcome;
    outcome.plan = base;
    Plan& plan = outcome.plan;

    std::set<int> touched;
    for (const Move& move : moves) {
        if (move.retailer < 1 || move.retailer > pub.n_retailers) return std::nullopt;
        if (move.from_period < 0 || move.from_period >= pub.horizon) return std::nullopt;
        if (move.to_period < 0 || move.to_period >= pub.horizon) return std::nullopt;
        if (move.from_period == move.to_period || move.qty <= 0.0) return std::nullopt;

        double source = plan.quantity(move.retailer, move.from_period);
        if (source < move.qty - kTol) return std::nullopt;

        double remainder = source - move.qty;
        if (remainder <= kTol) {
            plan.clear_delivery(move.retailer, move.from_period);
        } else {
            plan.set_delivery(move.retailer, move.from_period, remainder,
                              plan.vehicle_of(move.retailer, move.from_period));
        }
        double target = plan.quantity(move.retailer, move.to_period);
        plan.set_delivery(move.retailer, move.to_period, target + move.qty, 0);

        for (int t = std::min(move.from_period, move.to_period);
             t <= std::max(move.from_period, move.to_period); ++t) {
            touched.insert(t);
        }
    }

    // Receiving retailer's own flow balance and inventory cap.
    for (int i = 1; i <= pub.n_retailers; ++i) {
        double inv = pub.initial_inventory[static_cast<size_t>(i)];
        for (int t = 0; t < pub.horizon; ++t) {
            double q = plan.quantity(i, t);
            if (inv + q > pub.inventory_capacity[static_cast<size_t>(i)] + kTol) return std::nullopt;
            inv = inv + q - pub.demand[static_cast<size_t>(i)][static_cast<size_t>(t)];
            if (inv < -kTol) return std::nullopt;
        }
    }

    // Rebuild the routes of every period a move touches the endpoints of.
    std::set<int> route_periods;
    for (const Move& move : moves) {
        route_periods.insert(move.from_period);
        route_periods.insert(move.to_period);
    }
    for (int t : route_periods) {
        std::vector<std::pair<int, double>> deliveries;
        for (int i = 1; i <= pub.n_retailers; ++i) {
            double q = plan.quantity(i, t);
            if (q > 0.0) deliveries.emplace_back(i, q);
        }
        auto routes = routing::assign_vehicles(pub.transport_cost, deliveries, pub.vehicle_capacity,
                                               pub.n_vehicles, t);
        if (!routes) return std::nullopt;
        plan.clear_routes(t);
        for (const auto& route : *routes) {
            plan.set_route(route.vehicle, t, route.nodes);
            for (size_t a = 1; a + 1 < route.nodes.size(); ++a) {
                int i = route.nodes[a];
                plan.set_delivery(i, t, plan.quantity(i, t), route.vehicle);
            }
        }
    }

    // Keep the production plan when the supplier's stock still covers the
    // new delivery timing; otherwise fall back to lot-for-lot.
    auto supplier_level = [&](const Plan& p) {
        std::vector<double> level(static_cast<size_t>(pub.horizon), 0.0);
        double stock = pub.initial_inventory[0];
        for (int t = 0; t < pub.horizon; ++t) {
            stock += p.production[static_cast<size_t>(t)] - p.period_total(t);
            level[static_cast<size_t>(t)] = stock;
        }
        return level;
    };

    auto before_level = supplier_level(base);
    auto after_level = supplier_level(plan);
    bool stock_broken = std::any_of(after_level.begin(), after_level.end(),
                                    [](double v) { return v < -kTol; });
    if (stock_broken) {
        std::vector<double> totals(static_cast<size_t>(pub.horizon), 0.0);
        for (int t = 0; t < pub.horizon; ++t) totals[static_cast<size_t>(t)] = plan.period_total(t);
        auto production = lot_for_lot_production(pub, totals);
        if (!production) return std::nullopt;
        plan.production = production->quantity;
        plan.setup = production->setup;
        after_level = supplier_level(plan);
    }

    outcome.production_changed = stock_broken;
    for (int t = 0; t < pub.horizon && !outcome.production_changed; ++t) {
        if (std::abs(after_level[static_cast<size_t>(t)] - before_level[static_cast<size_t>(t)]) > kTol) {
            outcome.production_changed = true;
        }
    }
    if (outcome.production_changed) {
        for (int t = 0; t < pub.horizon; ++t) touched.insert(t);
    }

    outcome.affected_periods.assign(touched.begin(), touched.end());
    return outcome;
}

PlanningBoard::PlanningBoard(const Instance& instance, Plan initial)
    : instance_(&instance), initial_(initial), current_(std::move(initial)) {}

SupplierView PlanningBoard::supplier_view() const {
    return make_supplier_view(instance_->shared(), current_);
}

RetailerView PlanningBoard::retailer_view(int retailer) const {
    return make_retailer_view(*instance_, current_, retailer);
}

bool PlanningBoard::apply(const std::vector<Move>& moves) {
    if (moves.empty()) return true; // nothing to do, no revision bump
    auto outcome = apply_moves(instance_->shared(), current_, moves);
    if (!outcome) return false;
    if (!check_feasibility(instance_->shared(), outcome->plan).empty()) return false;
    current_ = std::move(outcome->plan);
    ++revision_;
    return true;
}

std::vector<int> voter_set(const PlanningBoard& board,
                           const Transaction& txn,
                           const std::vector<Move>& applied_moves) {
    std::set<int> voters(txn.negotiators.begin(), txn.negotiators.end());
    auto outcome = apply_moves(board.instance().shared(), board.current_plan(), applied_moves);
    if (outcome) {
        const Plan& before = board.current_plan();
        const Plan& after = outcome->plan;
        for (int t = 0; t < board.instance().horizon(); ++t) {
            auto members_before = before.neighborhood(t);
            auto members_after = after.neighborhood(t);
            if (members_before != members_after) {
                voters.insert(members_before.begin(), members_before.end());
                voters.insert(members_after.begin(), members_after.end());
            }
        }
    }
    return {voters.begin(), voters.end()};
}

NegotiationResult negotiate_joint_outcome(const PlanningBoard& board, const Transaction& txn) {
    const Instance& instance = board.instance();
    const PublicProblem& pub = instance.shared();
    const Plan& current = board.current_plan();
    size_t n_moves = txn.moves.size();

    NegotiationResult result;

    // Masks in fixed order: all moves applied first, then strict subsets led
    // by the lowest retailer id. The empty outcome is not evaluated.
    std::vector<unsigned> masks;
    unsigned full = (1u << n_moves) - 1u;
    for (unsigned mask = 1; mask <= full; ++mask) masks.push_back(mask);
    std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        if (pa != pb) return pa > pb;
        return a < b;
    });

    for (unsigned mask : masks) {
        OutcomeEval eval;
        std::vector<Move> applied;
        for (size_t b = 0; b < n_moves; ++b) {
            if (mask & (1u << b)) {
                applied.push_back(txn.moves[b]);
                eval.applied.push_back(txn.moves[b].retailer);
            }
        }
        std::sort(eval.applied.begin(), eval.applied.end());

        auto outcome = apply_moves(pub, current, applied);
        eval.feasible = outcome.has_value();
        if (eval.feasible) {
            eval.admissible = true;
            for (int negotiator : txn.negotiators) {
                RetailerView before = board.retailer_view(negotiator);
                RetailerView after = make_retailer_view(instance, outcome->plan, negotiator);
                DeltaReport delta = delta_utility(before, after, outcome->affected_periods,
                                                  outcome->production_changed);
                eval.negotiator_deltas[negotiator] = delta.total;
                eval.delta_sum += delta.total;
                bool is_applied = std::find(eval.applied.begin(), eval.applied.end(), negotiator) !=
                                  eval.applied.end();
                if (is_applied && !retailer_decide(delta.total)) eval.admissible = false;
            }
        }
        result.outcomes.push_back(std::move(eval));
    }

    const OutcomeEval* best = nullptr;
    for (const auto& eval : result.outcomes) {
        if (!eval.admissible) continue;
        if (best == nullptr || eval.delta_sum > best->delta_sum + kTol ||
            (std::abs(eval.delta_sum - best->delta_sum) <= kTol && eval.applied < best->applied)) {
            best = &eval;
        }
    }
    if (best != nullptr) result.chosen = best->applied;
    return result;
}

VoteRecord tally_votes(const std::map<int, double>& voter_deltas, bool supplier_tiebreak_in_favor) {
    VoteRecord record;
    record.deltas = voter_deltas;
    for (const auto& [voter, delta] : voter_deltas) {
        (void)voter;
        if (retailer_decide(delta)) {
            ++record.favor;
        } else {
            ++record.against;
        }
    }
    if (record.favor > record.against) {
        record.result = true;
    } else if (record.favor == record.against) {
        record.supplier_tiebreak = supplier_tiebreak_in_favor;
        record.result = supplier_tiebreak_in_favor;
    } else {
        record.result = false;
    }
    return record;
}

TransactionRecord process_transaction(PlanningBoard& board, const Transaction& txn) {
    const Instance& instance = board.instance();
    const PublicProblem& pub = instance.shared();
    const Plan& current = board.current_plan();

    TransactionRecord record;
    record.id = txn.id;
    record.kind = txn.kind;
    record.moves = txn.moves;
    record.estimated_saving = txn.estimated_saving;
    record.revision = board.revision();

    // Stale when the board no longer carries the deliveries the proposal
    // was built against.
    for (const Move& move : txn.moves) {
        double source = current.quantity(move.retailer, move.from_period);
        if (source < move.qty - kTol) record.stale = true;
        bool target_occupied = current.quantity(move.retailer, move.to_period) > 0.0;
        if (txn.kind == TxnKind::Removal && !target_occupied) record.stale = true;
        if (txn.kind == TxnKind::Insertion && target_occupied) record.stale = true;
    }
    if (record.stale) return record;

    NegotiationResult negotiation = negotiate_joint_outcome(board, txn);
    record.outcomes = negotiation.outcomes;
    record.chosen = negotiation.chosen;
    if (negotiation.chosen.empty()) return record; // rejected in negotiation

    std::vector<Move> applied;
    for (const Move& move : txn.moves) {
        if (std::find(negotiation.chosen.begin(), negotiation.chosen.end(), move.retailer) !=
            negotiation.chosen.end()) {
            applied.push_back(move);
        }
    }

    auto outcome = apply_moves(pub, current, applied);
    if (!outcome) return record; // should not happen after negotiation screened it

    std::vector<int> voters = voter_set(board, txn, applied);
    std::map<int, double> deltas;
    for (int voter : voters) {
        RetailerView before = board.retailer_view(voter);
        RetailerView after = make_retailer_view(instance, outcome->plan, voter);
        deltas[voter] =
            delta_utility(before, after, outcome->affected_periods, outcome->production_changed).total;
    }

    double visible_before = supplier_visible_cost(pub, current);
    double visible_after = supplier_visible_cost(pub, outcome->plan);
    bool tiebreak_in_favor = visible_after <= visible_before + kTol;

    VoteRecord vote = tally_votes(deltas, tiebreak_in_favor);
    record.voter_deltas = vote.deltas;
    record.favor = vote.favor;
    record.against = vote.against;
    record.tiebreak = vote.supplier_tiebreak;

    if (vote.result) {
        if (board.apply(applied)) {
            record.accepted = true;
        }
    }
    record.revision = board.revision();
    return record;
}

} // namespace prppp
