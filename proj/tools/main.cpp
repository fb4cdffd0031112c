#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "prppp/costs.hpp"
#include "prppp/engine.hpp"
#include "prppp/feasibility.hpp"
#include "prppp/generator.hpp"
#include "prppp/instance.hpp"
#include "prppp/oracle.hpp"
#include "prppp/plan.hpp"
#include "prppp/trace.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitFingerprint = 4;
constexpr int kExitTruncated = 5;

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw prppp::ValidationError("cannot write file: " + path);
    out << content;
}

int cmd_generate(std::uint64_t seed, int n, int horizon, const prppp::GeneratorProfile& profile,
                 const std::string& out_path) {
    auto generated = prppp::generate_instance(seed, n, horizon, profile);
    for (const auto& note : generated.clamp_notes) std::cerr << "note: " << note << "\n";
    std::string body = generated.instance.to_json().dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << body;
    } else {
        write_text_file(out_path, body);
    }
    return kExitOk;
}

int cmd_solve(const std::string& instance_path, const prppp::EngineConfig& config,
              const std::string& trace_path, const std::string& plan_path, bool omniscient,
              bool pretty) {
    prppp::Instance instance = prppp::Instance::from_file(instance_path);

    auto started = std::chrono::steady_clock::now();
    prppp::RunResult result;
    prppp::Plan initial;
    try {
        std::vector<std::vector<prppp::DeliveryPattern>> preferences(
            static_cast<size_t>(instance.retailers()) + 1);
        for (int i = 1; i <= instance.retailers(); ++i) {
            preferences[static_cast<size_t>(i)] =
                prppp::delivery_preferences(instance, i, config.preference_depth);
        }
        initial = prppp::initial_solution(instance, preferences);
        result = prppp::improve(instance, config);
    } catch (const prppp::ValidationError& e) {
        std::cerr << "infeasible instance: " << e.what() << "\n";
        return kExitInfeasible;
    }
    double wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                               started)
                         .count();

    std::string plan_dump = result.final_plan.to_json().dump();
    if (!plan_path.empty()) write_text_file(plan_path, result.final_plan.canonical_dump());
    if (!trace_path.empty()) {
        prppp::Trace trace{instance.fingerprint(), config, result.records, plan_dump, true};
        prppp::write_trace_file(trace_path, trace);
    }

    json summary;
    summary["fingerprint"] = instance.fingerprint();
    summary["initial_visible_cost"] = prppp::supplier_visible_cost(instance.shared(), initial);
    summary["final_visible_cost"] =
        prppp::supplier_visible_cost(instance.shared(), result.final_plan);
    if (omniscient) {
        summary["initial_global_cost"] = prppp::evaluate_global_cost(instance, initial);
        summary["final_global_cost"] = prppp::evaluate_global_cost(instance, result.final_plan);
        summary["omniscient"] = true; // test-only view of private costs
    }
    summary["rounds"] = result.stats.rounds;
    summary["proposed"] = result.stats.proposed;
    summary["accepted"] = result.stats.accepted;
    if (prppp::oracle_in_bounds(instance)) {
        auto oracle = prppp::solve_exact(instance);
        summary["oracle_cost"] = oracle.cost;
        summary["oracle_gap"] =
            prppp::optimality_gap(oracle.cost, prppp::evaluate_global_cost(instance, result.final_plan));
    } else {
        summary["oracle_gap"] = nullptr;
    }
    summary["wall_ms"] = wall_ms;

    if (pretty) {
        std::cout << "instance        " << summary["fingerprint"].get<std::string>() << "\n"
                  << "rounds          " << result.stats.rounds << "\n"
                  << "visible cost    " << summary["initial_visible_cost"].get<double>() << " -> "
                  << summary["final_visible_cost"].get<double>() << "\n";
        for (const auto& [kind, count] : result.stats.proposed) {
            std::cout << kind << "  proposed " << count << ", accepted "
                      << result.stats.accepted.at(kind) << "\n";
        }
        if (summary.contains("oracle_cost")) {
            std::cout << "oracle gap      " << summary["oracle_gap"].get<double>() << "\n";
        }
    } else {
        std::cout << summary.dump(2) << "\n";
    }
    return kExitOk;
}

int cmd_verify(const std::string& instance_path, const std::string& plan_path) {
    prppp::Instance instance = prppp::Instance::from_file(instance_path);
    prppp::Plan plan = prppp::Plan::from_file(plan_path, instance.shared());
    auto violations = prppp::check_feasibility(instance, plan);
    for (const auto& violation : violations) {
        std::cout << violation.to_json().dump() << "\n";
    }
    return violations.empty() ? kExitOk : kExitVerifyFailed;
}

int cmd_replay(const std::string& instance_path, const std::string& trace_path,
               const std::string& out_path) {
    prppp::Instance instance = prppp::Instance::from_file(instance_path);
    prppp::Trace trace = prppp::read_trace_file(trace_path);
    if (trace.fingerprint != instance.fingerprint()) {
        std::cerr << "fingerprint mismatch: trace was produced for a different instance\n";
        return kExitFingerprint;
    }
    prppp::ReplayResult replayed = prppp::replay(instance, trace);
    if (!out_path.empty()) write_text_file(out_path, replayed.plan.canonical_dump());
    if (!trace.has_final) {
        std::cerr << "trace is truncated; replayed " << replayed.revision << " revisions\n";
        return kExitTruncated;
    }
    if (replayed.plan.to_json().dump() != trace.final_plan_json) {
        std::cerr << "replayed plan differs from the stored final plan\n";
        return kExitVerifyFailed;
    }
    std::cout << "replay ok: " << replayed.revision << " revisions\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"production routing with private retailer costs: generate, solve, verify, replay"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "write a random instance");
    std::uint64_t seed = 1;
    int gen_n = 5, gen_t = 6;
    prppp::GeneratorProfile profile;
    std::string gen_out;
    generate->add_option("--seed", seed, "random seed");
    generate->add_option("--n", gen_n, "number of retailers")->check(CLI::PositiveNumber);
    generate->add_option("--t", gen_t, "number of periods")->check(CLI::PositiveNumber);
    generate->add_option("--vehicles", profile.n_vehicles, "fleet size")->check(CLI::PositiveNumber);
    generate->add_option("--dmin", profile.demand_min, "minimum nonzero demand");
    generate->add_option("--dmax", profile.demand_max, "maximum demand");
    generate->add_option("--zero-share", profile.zero_demand_share, "share of empty demand cells");
    generate->add_option("--scale", profile.scale, "transport cost per unit distance");
    generate->add_option("--out,-o", gen_out, "output path (stdout when omitted)");

    // solve
    auto* solve = app.add_subcommand("solve", "run the negotiation loop on an instance");
    std::string solve_instance, solve_trace, solve_plan;
    prppp::EngineConfig config;
    bool omniscient = false, pretty = false;
    solve->add_option("instance", solve_instance, "instance JSON")->required();
    solve->add_option("--max-rounds", config.max_rounds)->check(CLI::PositiveNumber);
    solve->add_option("--agenda-size", config.agenda_size)->check(CLI::PositiveNumber);
    solve->add_option("--stall-rounds", config.stall_rounds)->check(CLI::PositiveNumber);
    solve->add_option("--pref-depth", config.preference_depth)->check(CLI::PositiveNumber);
    solve->add_option("--seed", config.seed);
    solve->add_option("--trace", solve_trace, "trace output path (JSONL)");
    solve->add_option("--plan", solve_plan, "final plan output path");
    solve->add_flag("--omniscient", omniscient, "also report global cost (test-only)");
    solve->add_flag("--pretty", pretty, "human-readable summary");

    // verify
    auto* verify = app.add_subcommand("verify", "check a plan against an instance");
    std::string verify_instance, verify_plan;
    verify->add_option("instance", verify_instance)->required();
    verify->add_option("plan", verify_plan)->required();

    // replay
    auto* replay_cmd = app.add_subcommand("replay", "re-apply a trace and compare final plans");
    std::string replay_instance, replay_trace, replay_out;
    replay_cmd->add_option("instance", replay_instance)->required();
    replay_cmd->add_option("trace", replay_trace)->required();
    replay_cmd->add_option("--out,-o", replay_out, "write the replayed plan here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (generate->parsed()) return cmd_generate(seed, gen_n, gen_t, profile, gen_out);
        if (solve->parsed()) {
            return cmd_solve(solve_instance, config, solve_trace, solve_plan, omniscient, pretty);
        }
        if (verify->parsed()) return cmd_verify(verify_instance, verify_plan);
        if (replay_cmd->parsed()) return cmd_replay(replay_instance, replay_trace, replay_out);
    } catch (const prppp::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
