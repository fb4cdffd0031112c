// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned here, in code.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "prppp/costs.hpp"
#include "prppp/engine.hpp"
#include "prppp/feasibility.hpp"
#include "prppp/generator.hpp"
#include "prppp/oracle.hpp"
#include "prppp/trace.hpp"
#include "prppp/utility.hpp"
#include "fixtures.hpp"

using namespace prppp;

namespace {

constexpr double kPrintedTol = 0.05;  // figures in the worked records carry one decimal
constexpr double kRelTol = 1e-9;

int passed = 0, failed = 0;

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> body;
};

bool near(double value, double printed, double tol = kPrintedTol) {
    return std::abs(value - printed) <= tol;
}

std::vector<std::vector<DeliveryPattern>> all_preferences(const Instance& inst, int depth = 5) {
    std::vector<std::vector<DeliveryPattern>> prefs(static_cast<size_t>(inst.retailers()) + 1);
    for (int i = 1; i <= inst.retailers(); ++i) {
        prefs[static_cast<size_t>(i)] = delivery_preferences(inst, i, depth);
    }
    return prefs;
}

std::string agenda_signature(const Agenda& agenda) {
    std::string sig;
    for (const auto& txn : agenda) {
        sig += txn_kind_name(txn.kind);
        for (const auto& move : txn.moves) {
            sig += " " + std::to_string(move.retailer) + ":" + std::to_string(move.from_period) +
                   ">" + std::to_string(move.to_period) + "@" + std::to_string(move.qty);
        }
        sig += "|";
    }
    return sig;
}

// 1. Anticipation golden record: deltas, tie vote, supplier tie-break.
bool criterion_anticipation(std::string& note) {
    auto started = std::chrono::steady_clock::now();
    Instance inst = fixtures::anticipation_instance();
    Plan before = fixtures::anticipation_before(inst);
    Transaction txn = fixtures::anticipation_txn();

    auto outcome = apply_moves(inst.shared(), before, txn.moves);
    if (!outcome) {
        note = "move application failed";
        return false;
    }
    DeltaReport d3 = delta_utility(make_retailer_view(inst, before, 3),
                                   make_retailer_view(inst, outcome->plan, 3),
                                   outcome->affected_periods, outcome->production_changed);
    bool ok = d3.per_period.size() == 2 && near(d3.per_period[0].second, -325.0) &&
              near(d3.per_period[1].second, 340.0) && near(d3.total, 15.0);
    for (int c : {1, 2}) {
        DeltaReport d = delta_utility(make_retailer_view(inst, before, c),
                                      make_retailer_view(inst, outcome->plan, c),
                                      outcome->affected_periods, outcome->production_changed);
        ok = ok && near(d.total, -15.0);
    }
    DeltaReport d4 = delta_utility(make_retailer_view(inst, before, 4),
                                   make_retailer_view(inst, outcome->plan, 4),
                                   outcome->affected_periods, outcome->production_changed);
    ok = ok && near(d4.total, 95.0);

    PlanningBoard board(inst, before);
    TransactionRecord record = process_transaction(board, txn);
    ok = ok && !record.chosen.empty() && record.favor == 2 && record.against == 2 &&
         record.tiebreak.has_value() && *record.tiebreak && record.accepted;

    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
                    .count();
    ok = ok && ms < 1000.0;
    note = "deltas " + std::to_string(d3.total) + ", tally " + std::to_string(record.favor) + "-" +
           std::to_string(record.against) + ", " + std::to_string(ms) + " ms";
    return ok;
}

// 2. Substitution golden record: outcome deltas, chosen split, 3-2 vote.
bool criterion_substitution(std::string& note) {
    auto started = std::chrono::steady_clock::now();
    Instance inst = fixtures::substitution_instance();
    PlanningBoard board(inst, fixtures::substitution_before(inst));
    Transaction txn = fixtures::substitution_txn();

    NegotiationResult negotiation = negotiate_joint_outcome(board, txn);
    if (negotiation.outcomes.size() != 3) {
        note = "expected 3 joint outcomes";
        return false;
    }
    const auto& yy = negotiation.outcomes[0];
    const auto& yn = negotiation.outcomes[1];
    const auto& ny = negotiation.outcomes[2];
    bool ok = near(yy.negotiator_deltas.at(2), 106.7) && near(yy.negotiator_deltas.at(4), -48.3) &&
              near(yn.negotiator_deltas.at(2), 154.2) && near(yn.negotiator_deltas.at(4), 57.5) &&
              near(ny.negotiator_deltas.at(2), 91.7) && near(ny.negotiator_deltas.at(4), 10.0) &&
              negotiation.chosen == std::vector<int>{2};

    TransactionRecord record = process_transaction(board, txn);
    ok = ok && near(record.voter_deltas.at(1), -75.8) && near(record.voter_deltas.at(3), 57.5) &&
         near(record.voter_deltas.at(5), -133.3) && record.favor == 3 && record.against == 2 &&
         record.accepted && !record.tiebreak.has_value();

    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
                    .count();
    ok = ok && ms < 1000.0;
    note = "chosen (Y,N), tally 3-2, " + std::to_string(ms) + " ms";
    return ok;
}

// 3. Utility conservation over 200 seeded feasible plans.
bool criterion_conservation(std::string& note) {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        auto generated = generate_instance(seed, 1 + static_cast<int>(seed % 10),
                                           1 + static_cast<int>(seed % 6));
        const Instance& inst = generated.instance;
        Plan plan = initial_solution(inst, all_preferences(inst));
        double sum = 0.0;
        for (int c = 1; c <= inst.retailers(); ++c) {
            sum += total_utility(make_retailer_view(inst, plan, c)).total;
        }
        double global = evaluate_global_cost(inst, plan);
        double rel = std::abs(sum + global) / std::max(1.0, std::abs(global));
        worst = std::max(worst, rel);
        if (rel > kRelTol) {
            note = "seed " + std::to_string(seed) + " rel error " + std::to_string(rel);
            return false;
        }
    }
    note = "200 plans, worst relative error " + std::to_string(worst);
    return true;
}

// 4. Every accepted transaction leaves a feasible board.
bool criterion_feasibility(std::string& note) {
    int accepted_total = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto generated = generate_instance(seed, 1 + static_cast<int>(seed % 8),
                                           2 + static_cast<int>(seed % 3));
        const Instance& inst = generated.instance;
        RunResult run = improve(inst, EngineConfig{});

        // replay the accepted transactions one at a time and re-check
        PlanningBoard board(inst, initial_solution(inst, all_preferences(inst)));
        for (const auto& record : run.records) {
            if (!record.accepted) continue;
            std::vector<Move> applied;
            for (const Move& move : record.moves) {
                for (int id : record.chosen) {
                    if (move.retailer == id) applied.push_back(move);
                }
            }
            if (!board.apply(applied)) {
                note = "seed " + std::to_string(seed) + ": accepted transaction failed to re-apply";
                return false;
            }
            if (!check_feasibility(inst, board.current_plan()).empty()) {
                note = "seed " + std::to_string(seed) + ": post-state infeasible";
                return false;
            }
            ++accepted_total;
        }
        if (!check_feasibility(inst, run.final_plan).empty()) {
            note = "seed " + std::to_string(seed) + ": final plan infeasible";
            return false;
        }
    }
    note = std::to_string(accepted_total) + " accepted transactions re-checked over 100 runs";
    return true;
}

// 5. Perturbing any private holding cost changes nothing the supplier sees.
bool criterion_privacy(std::string& note) {
    int cases = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto generated = generate_instance(seed, 1 + static_cast<int>(seed % 6),
                                           2 + static_cast<int>(seed % 3));
        const Instance& base = generated.instance;
        Plan base_plan = initial_solution(base, all_preferences(base));
        std::string base_sig;
        {
            PlanningBoard board(base, base_plan);
            base_sig = agenda_signature(propose_agenda(board.supplier_view(), EngineConfig{}));
        }
        for (int c = 1; c <= base.retailers(); ++c) {
            PublicProblem pub = base.shared();
            std::vector<double> holding = base.holding_costs();
            holding[static_cast<size_t>(c)] *= 10.0;
            Instance perturbed = Instance::make(std::move(pub), std::move(holding));
            Plan plan = initial_solution(perturbed, all_preferences(perturbed));
            if (plan.canonical_dump() != base_plan.canonical_dump()) {
                note = "seed " + std::to_string(seed) + ": initial solution moved with h_" +
                       std::to_string(c);
                return false;
            }
            PlanningBoard board(perturbed, plan);
            if (agenda_signature(propose_agenda(board.supplier_view(), EngineConfig{})) != base_sig) {
                note = "seed " + std::to_string(seed) + ": agenda moved with h_" + std::to_string(c);
                return false;
            }
            ++cases;
        }
    }
    note = std::to_string(cases) + " single-cost perturbations, all invisible";
    return true;
}

// 6. Oracle sandwich on 50 in-bounds instances.
bool criterion_oracle(std::string& note) {
    double worst_gap = 0.0;
    int optimal_initials = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto generated = generate_instance(seed, 1 + static_cast<int>(seed % 4),
                                           1 + static_cast<int>(seed % 3));
        const Instance& inst = generated.instance;
        OracleResult oracle = solve_exact(inst);
        RunResult run = improve(inst, EngineConfig{});
        double engine_cost = evaluate_global_cost(inst, run.final_plan);
        if (oracle.cost > engine_cost + 1e-9) {
            note = "seed " + std::to_string(seed) + ": oracle above engine";
            return false;
        }
        worst_gap = std::max(worst_gap, optimality_gap(oracle.cost, engine_cost));

        double initial_cost =
            evaluate_global_cost(inst, initial_solution(inst, all_preferences(inst)));
        if (std::abs(initial_cost - oracle.cost) <= 1e-9) {
            ++optimal_initials;
            int accepted = 0;
            for (const auto& record : run.records) accepted += record.accepted ? 1 : 0;
            if (accepted != 0 || run.stats.rounds != 1) {
                note = "seed " + std::to_string(seed) + ": optimal start but " +
                       std::to_string(accepted) + " accepted in " +
                       std::to_string(run.stats.rounds) + " rounds";
                return false;
            }
        }
    }
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "worst gap %.4f", worst_gap);
    note = std::string(buffer) + ", " + std::to_string(optimal_initials) +
           " instances started optimal and stopped in round 1";
    return true;
}

// 7. Determinism and replay over 50 seeded runs.
bool criterion_determinism(std::string& note) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto generated = generate_instance(seed, 2 + static_cast<int>(seed % 7),
                                           2 + static_cast<int>(seed % 4));
        const Instance& inst = generated.instance;
        EngineConfig config;

        RunResult a = improve(inst, config);
        RunResult b = improve(inst, config);
        Trace ta{inst.fingerprint(), config, a.records, a.final_plan.to_json().dump(), true};
        Trace tb{inst.fingerprint(), config, b.records, b.final_plan.to_json().dump(), true};
        std::ostringstream sa, sb;
        write_trace(sa, ta);
        write_trace(sb, tb);
        if (sa.str() != sb.str()) {
            note = "seed " + std::to_string(seed) + ": traces differ between runs";
            return false;
        }
        ReplayResult replayed = replay(inst, ta);
        if (replayed.plan.to_json().dump() != ta.final_plan_json) {
            note = "seed " + std::to_string(seed) + ": replay diverged";
            return false;
        }
    }
    note = "50 solve/solve and solve/replay pairs identical";
    return true;
}

// 8. Tour solvers: heuristic dominated by exact, exact matches brute force.
bool criterion_tsp(std::string& note) {
    std::mt19937_64 rng(2024);
    auto random_matrix = [&](int nodes) {
        CostMatrix c(static_cast<size_t>(nodes), std::vector<double>(static_cast<size_t>(nodes), 0.0));
        for (int i = 0; i < nodes; ++i) {
            for (int j = i + 1; j < nodes; ++j) {
                double v = static_cast<double>(rng() % 500) + 1.0;
                c[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
                c[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
            }
        }
        return c;
    };
    for (int trial = 0; trial < 100; ++trial) {
        int nodes = 2 + static_cast<int>(rng() % 11);
        CostMatrix c = random_matrix(nodes);
        std::vector<int> retailers;
        for (int i = 1; i < nodes; ++i) retailers.push_back(i);
        routing::Tour exact = routing::solve_tsp_exact(c, retailers);
        routing::Tour heuristic = routing::solve_tsp_heuristic(c, retailers);
        if (heuristic.cost < exact.cost - 1e-9) {
            note = "trial " + std::to_string(trial) + ": heuristic beat exact";
            return false;
        }
        if (nodes <= 8) {
            std::vector<int> perm = retailers;
            double best = -1.0;
            std::sort(perm.begin(), perm.end());
            do {
                std::vector<int> tour{0};
                tour.insert(tour.end(), perm.begin(), perm.end());
                tour.push_back(0);
                double cost = routing::tour_cost(c, tour);
                if (best < 0 || cost < best) best = cost;
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (std::abs(best - exact.cost) > 1e-9) {
                note = "trial " + std::to_string(trial) + ": exact missed brute-force optimum";
                return false;
            }
        }
    }
    note = "100 instances, exact <= heuristic, brute force matched up to 8 nodes";
    return true;
}

// 9. Production arithmetic: 140- and 200-unit runs at u=8, f=1500.
bool criterion_production_cost(std::string& note) {
    PublicProblem pub;
    pub.n_retailers = 1;
    pub.horizon = 4;
    pub.n_vehicles = 1;
    pub.unit_production_cost = 8.0;
    pub.setup_cost = 1500.0;
    pub.transport_cost = {{0, 0}, {0, 0}};
    pub.demand = {{0, 0, 0, 0}, {0, 140, 0, 200}};
    pub.production_capacity = 500;
    pub.vehicle_capacity = 500;
    pub.inventory_capacity = {1000, 1000};
    pub.initial_inventory = {0, 0};
    Instance inst = Instance::make(std::move(pub), {0.0, 0.0});

    Plan plan(1, 4, 1);
    plan.set_delivery(1, 1, 140.0, 0);
    plan.set_delivery(1, 3, 200.0, 0);
    plan.set_route(0, 1, {0, 1, 0});
    plan.set_route(0, 3, {0, 1, 0});
    plan.production = {0.0, 140.0, 0.0, 200.0};
    plan.setup = {false, true, false, true};

    double cost = evaluate_global_cost(inst, plan);
    note = "evaluates to " + std::to_string(cost);
    return cost == 5720.0;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"1 anticipation golden record", criterion_anticipation},
        {"2 substitution golden record", criterion_substitution},
        {"3 utility conservation", criterion_conservation},
        {"4 feasibility preservation", criterion_feasibility},
        {"5 privacy isolation", criterion_privacy},
        {"6 oracle sandwich", criterion_oracle},
        {"7 determinism and replay", criterion_determinism},
        {"8 tour correctness", criterion_tsp},
        {"9 production cost arithmetic", criterion_production_cost},
    };

    for (auto& criterion : criteria) {
        std::string note;
        bool ok = false;
        try {
            ok = criterion.body(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "PASS " : "FAIL ") << criterion.name;
        if (!note.empty()) std::cout << "  [" << note << "]";
        std::cout << "\n";
        (ok ? passed : failed) += 1;
    }
    std::cout << passed << " passed, " << failed << " failed\n";
    return failed == 0 ? 0 : 1;
}
