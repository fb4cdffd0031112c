#include "prppp/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "prppp/costs.hpp"
#include "prppp/feasibility.hpp"
#include "prppp/parallel.hpp"
#include "prppp/routing.hpp"

namespace prppp {

using nlohmann::json;

namespace {
constexpr double kTol = 1e-9;
constexpr int kMaxRepairSteps = 10000;
} // namespace

EngineConfig EngineConfig::from_json(const json& doc) {
    EngineConfig config;
    if (doc.contains("max_rounds")) config.max_rounds = doc.at("max_rounds").get<int>();
    if (doc.contains("agenda_size")) config.agenda_size = doc.at("agenda_size").get<int>();
    if (doc.contains("stall_rounds")) config.stall_rounds = doc.at("stall_rounds").get<int>();
    if (doc.contains("preference_depth")) config.preference_depth = doc.at("preference_depth").get<int>();
    if (doc.contains("seed")) config.seed = doc.at("seed").get<long>();
    if (config.max_rounds < 1 || config.agenda_size < 1 || config.stall_rounds < 1 ||
        config.preference_depth < 1) {
        throw ValidationError("engine config values must be positive");
    }
    return config;
}

json EngineConfig::to_json() const {
    return json{{"max_rounds", max_rounds},
                {"agenda_size", agenda_size},
                {"stall_rounds", stall_rounds},
                {"preference_depth", preference_depth},
                {"seed", seed}};
}

namespace {

// Retailer's own stock trajectory under a delivery vector; empty result
// when flow balance or the inventory cap breaks.
bool retailer_vector_ok(const PublicProblem& pub, int retailer, const std::vector<double>& qty) {
    double inv = pub.initial_inventory[static_cast<size_t>(retailer)];
    for (int t = 0; t < pub.horizon; ++t) {
        double q = qty[static_cast<size_t>(t)];
        if (inv + q > pub.inventory_capacity[static_cast<size_t>(retailer)] + kTol) return false;
        inv = inv + q - pub.demand[static_cast<size_t>(retailer)][static_cast<size_t>(t)];
        if (inv < -kTol) return false;
    }
    return true;
}

bool period_packs(const PublicProblem& pub, const std::vector<std::vector<double>>& qty, int period) {
    std::vector<std::pair<int, double>> deliveries;
    for (int i = 1; i <= pub.n_retailers; ++i) {
        double q = qty[static_cast<size_t>(i)][static_cast<size_t>(period)];
        if (q > 0.0) deliveries.emplace_back(i, q);
    }
    return routing::assign_vehicles(pub.transport_cost, deliveries, pub.vehicle_capacity,
                                    pub.n_vehicles, period)
        .has_value();
}

} // namespace

Plan initial_solution(const Instance& instance,
                      const std::vector<std::vector<DeliveryPattern>>& preferences) {
    const PublicProblem& pub = instance.shared();
    int n = pub.n_retailers;
    int T = pub.horizon;
    if (static_cast<int>(preferences.size()) != n + 1) {
        throw ValidationError("preferences must hold one pattern list per retailer");
    }
    for (int i = 1; i <= n; ++i) {
        if (preferences[static_cast<size_t>(i)].empty()) {
            throw ValidationError("retailer " + std::to_string(i) + " has no delivery preferences");
        }
    }

    std::vector<size_t> pattern_index(static_cast<size_t>(n) + 1, 0);

    auto advance_fallback = [&]() -> bool {
        for (int i = 1; i <= n; ++i) {
            if (pattern_index[static_cast<size_t>(i)] + 1 < preferences[static_cast<size_t>(i)].size()) {
                ++pattern_index[static_cast<size_t>(i)];
                return true;
            }
        }
        return false;
    };

    for (int step = 0; step < kMaxRepairSteps; ++step) {
        // Combine the selected pattern of each retailer.
        std::vector<std::vector<double>> qty(static_cast<size_t>(n) + 1,
                                             std::vector<double>(static_cast<size_t>(T), 0.0));
        for (int i = 1; i <= n; ++i) {
            qty[static_cast<size_t>(i)] =
                preferences[static_cast<size_t>(i)][pattern_index[static_cast<size_t>(i)]].quantity;
        }

        // Advance the smallest offending deliveries until every period packs.
        bool packing_ok = true;
        for (int repair = 0; repair < kMaxRepairSteps; ++repair) {
            int bad_period = -1;
            for (int t = 0; t < T; ++t) {
                if (!period_packs(pub, qty, t)) {
                    bad_period = t;
                    break;
                }
            }
            if (bad_period < 0) break;

            std::vector<std::pair<double, int>> candidates; // (qty, retailer)
            for (int i = 1; i <= n; ++i) {
                double q = qty[static_cast<size_t>(i)][static_cast<size_t>(bad_period)];
                if (q > 0.0) candidates.emplace_back(q, i);
            }
            std::sort(candidates.begin(), candidates.end());

            bool moved = false;
            for (const auto& [q, i] : candidates) {
                for (int t2 = bad_period - 1; t2 >= 0 && !moved; --t2) {
                    auto trial = qty[static_cast<size_t>(i)];
                    trial[static_cast<size_t>(t2)] += q;
                    trial[static_cast<size_t>(bad_period)] = 0.0;
                    if (!retailer_vector_ok(pub, i, trial)) continue;
                    auto saved = qty[static_cast<size_t>(i)];
                    qty[static_cast<size_t>(i)] = trial;
                    if (period_packs(pub, qty, t2)) {
                        moved = true;
                    } else {
                        qty[static_cast<size_t>(i)] = saved;
                    }
                }
                if (moved) break;
            }
            if (!moved) {
                packing_ok = false;
                break;
            }
        }

        if (packing_ok) {
            std::vector<double> totals(static_cast<size_t>(T), 0.0);
            for (int t = 0; t < T; ++t) {
                for (int i = 1; i <= n; ++i) totals[static_cast<size_t>(t)] += qty[static_cast<size_t>(i)][static_cast<size_t>(t)];
            }
            auto production = lot_for_lot_production(pub, totals);
            if (production) {
                Plan plan(n, T, pub.n_vehicles);
                plan.production = production->quantity;
                plan.setup = production->setup;
                for (int t = 0; t < T; ++t) {
                    std::vector<std::pair<int, double>> deliveries;
                    for (int i = 1; i <= n; ++i) {
                        double q = qty[static_cast<size_t>(i)][static_cast<size_t>(t)];
                        if (q > 0.0) deliveries.emplace_back(i, q);
                    }
                    auto routes = routing::assign_vehicles(pub.transport_cost, deliveries,
                                                           pub.vehicle_capacity, pub.n_vehicles, t);
                    // packability was just verified
                    for (const auto& route : *routes) {
                        plan.set_route(route.vehicle, t, route.nodes);
                        for (size_t a = 1; a + 1 < route.nodes.size(); ++a) {
                            int i = route.nodes[a];
                            plan.set_delivery(i, t, qty[static_cast<size_t>(i)][static_cast<size_t>(t)],
                                              route.vehicle);
                        }
                    }
                }
                return plan;
            }
        }

        if (!advance_fallback()) {
            throw ValidationError("no feasible initial solution within the preference depth");
        }
    }
    throw ValidationError("initial solution repair did not converge");
}

namespace {

struct Candidate {
    TxnKind kind;
    std::vector<Move> moves;
    double saving = 0.0;
    bool feasible = false;
};

Candidate evaluate_candidate(const PublicProblem& pub, const Plan& plan, double visible_before,
                             TxnKind kind, std::vector<Move> moves) {
    Candidate cand;
    cand.kind = kind;
    cand.moves = std::move(moves);
    auto outcome = apply_moves(pub, plan, cand.moves);
    if (outcome) {
        cand.feasible = true;
        cand.saving = visible_before - supplier_visible_cost(pub, outcome->plan);
    }
    return cand;
}

} // namespace

Agenda propose_agenda(const SupplierView& view, const EngineConfig& config, long next_id) {
    const PublicProblem& pub = *view.problem;
    const Plan& plan = *view.plan;
    int n = pub.n_retailers;
    int T = pub.horizon;
    double visible_before = supplier_visible_cost(pub, plan);

    // Whole-delivery move candidates from the supplier's view: removals merge
    // a delivery into another delivery period, insertions open a new one.
    std::vector<std::pair<TxnKind, Move>> singles;
    for (int i = 1; i <= n; ++i) {
        std::vector<int> delivery_periods;
        std::vector<int> empty_periods;
        for (int t = 0; t < T; ++t) {
            if (plan.quantity(i, t) > 0.0) {
                delivery_periods.push_back(t);
            } else {
                empty_periods.push_back(t);
            }
        }
        for (int from : delivery_periods) {
            double q = plan.quantity(i, from);
            for (int to : delivery_periods) {
                if (to != from) singles.emplace_back(TxnKind::Removal, Move{i, from, to, q});
            }
            for (int to : empty_periods) {
                singles.emplace_back(TxnKind::Insertion, Move{i, from, to, q});
            }
        }
    }

    std::vector<Candidate> evaluated(singles.size());
    parallel_index(singles.size(), [&](size_t idx) {
        evaluated[idx] = evaluate_candidate(pub, plan, visible_before, singles[idx].first,
                                            {singles[idx].second});
    });

    std::vector<Candidate> kept;
    std::vector<Candidate> rejected_insertions;
    std::vector<Candidate> removal_pool;
    for (auto& cand : evaluated) {
        if (!cand.feasible) continue;
        if (cand.kind == TxnKind::Removal) removal_pool.push_back(cand);
        if (cand.saving > kTol) {
            kept.push_back(cand);
        } else if (cand.kind == TxnKind::Insertion) {
            rejected_insertions.push_back(cand);
        }
    }

    auto by_saving = [](const Candidate& a, const Candidate& b) {
        if (a.saving != b.saving) return a.saving > b.saving;
        const Move& ma = a.moves.front();
        const Move& mb = b.moves.front();
        return std::tie(ma.retailer, ma.from_period, ma.to_period) <
               std::tie(mb.retailer, mb.from_period, mb.to_period);
    };
    std::sort(rejected_insertions.begin(), rejected_insertions.end(), by_saving);
    std::sort(removal_pool.begin(), removal_pool.end(), by_saving);
    constexpr size_t kPairPool = 10;
    if (rejected_insertions.size() > kPairPool) rejected_insertions.resize(kPairPool);
    if (removal_pool.size() > kPairPool) removal_pool.resize(kPairPool);

    // Substitutions: an insertion that cannot stand by itself paired with a
    // removal of a different retailer touching one of the same periods.
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t a = 0; a < rejected_insertions.size(); ++a) {
        const Move& ins = rejected_insertions[a].moves.front();
        for (size_t b = 0; b < removal_pool.size(); ++b) {
            const Move& rem = removal_pool[b].moves.front();
            if (rem.retailer == ins.retailer) continue;
            bool shared = ins.from_period == rem.from_period || ins.from_period == rem.to_period ||
                          ins.to_period == rem.from_period || ins.to_period == rem.to_period;
            if (shared) pairs.emplace_back(a, b);
        }
    }
    std::vector<Candidate> pair_evaluated(pairs.size());
    parallel_index(pairs.size(), [&](size_t idx) {
        Move ins = rejected_insertions[pairs[idx].first].moves.front();
        Move rem = removal_pool[pairs[idx].second].moves.front();
        std::vector<Move> moves{ins, rem};
        std::sort(moves.begin(), moves.end(),
                  [](const Move& x, const Move& y) { return x.retailer < y.retailer; });
        pair_evaluated[idx] =
            evaluate_candidate(pub, plan, visible_before, TxnKind::Substitution, std::move(moves));
    });
    for (auto& cand : pair_evaluated) {
        if (cand.feasible && cand.saving > kTol) kept.push_back(cand);
    }

    std::stable_sort(kept.begin(), kept.end(), [](const Candidate& a, const Candidate& b) {
        if (a.saving != b.saving) return a.saving > b.saving;
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        const Move& ma = a.moves.front();
        const Move& mb = b.moves.front();
        return std::tie(ma.retailer, ma.from_period, ma.to_period) <
               std::tie(mb.retailer, mb.from_period, mb.to_period);
    });
    if (static_cast<int>(kept.size()) > config.agenda_size) {
        kept.resize(static_cast<size_t>(config.agenda_size));
    }

    Agenda agenda;
    agenda.reserve(kept.size());
    for (auto& cand : kept) {
        Transaction txn;
        txn.id = next_id++;
        txn.kind = cand.kind;
        txn.moves = cand.moves;
        for (const Move& move : cand.moves) txn.negotiators.push_back(move.retailer);
        std::sort(txn.negotiators.begin(), txn.negotiators.end());
        txn.estimated_saving = cand.saving;
        agenda.push_back(std::move(txn));
    }
    return agenda;
}

bool stopping_criterion(const std::vector<int>& accepted_per_round, const EngineConfig& config) {
    int rounds = static_cast<int>(accepted_per_round.size());
    if (rounds >= config.max_rounds) return true;
    if (rounds < config.stall_rounds) return false;
    for (int r = rounds - config.stall_rounds; r < rounds; ++r) {
        if (accepted_per_round[static_cast<size_t>(r)] > 0) return false;
    }
    return true;
}

RunResult improve(const Instance& instance, const EngineConfig& config) {
    int n = instance.retailers();
    std::vector<std::vector<DeliveryPattern>> preferences(static_cast<size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) {
        preferences[static_cast<size_t>(i)] = delivery_preferences(instance, i, config.preference_depth);
    }

    PlanningBoard board(instance, initial_solution(instance, preferences));

    RunResult result;
    for (const char* kind : {"removal", "insertion", "substitution"}) {
        result.stats.proposed[kind] = 0;
        result.stats.accepted[kind] = 0;
    }

    std::vector<int> accepted_per_round;
    long next_id = 1;
    while (true) {
        Agenda agenda = propose_agenda(board.supplier_view(), config, next_id);
        next_id += static_cast<long>(agenda.size());

        int accepted = 0;
        for (const Transaction& txn : agenda) {
            TransactionRecord record = process_transaction(board, txn);
            ++result.stats.proposed[txn_kind_name(record.kind)];
            if (record.accepted) {
                ++accepted;
                ++result.stats.accepted[txn_kind_name(record.kind)];
            }
            result.records.push_back(std::move(record));
        }
        accepted_per_round.push_back(accepted);
        if (stopping_criterion(accepted_per_round, config)) break;
    }

    result.stats.rounds = static_cast<int>(accepted_per_round.size());
    result.final_plan = board.current_plan();
    return result;
}

} // namespace prppp
