// Command-line front end: solve instances, check rosters against the hard
// constraints and preference costs, run seeded benchmark campaigns, and
// certify tiny instances by exhaustive search.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rostering/constraints.hpp"
#include "rostering/io.hpp"
#include "rostering/oracle.hpp"
#include "rostering/penalty.hpp"
#include "rostering/solver.hpp"

namespace {

using nlohmann::json;
using namespace rostering;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;             // usage, I/O, parse, validation
constexpr int kExitInfeasible = 2;        // supply screen failed / oracle infeasible
constexpr int kExitPhase1Exhausted = 3;   // search gave up below full feasibility
constexpr int kExitRosterInfeasible = 4;  // check found hard violations

struct SolverFlags {
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> phase1_cap;
    std::optional<std::uint64_t> phase2_cap;
    std::uint64_t stall_cap = 100'000;
    std::string selector = "most";
    std::string swap = "within-day";
    bool strict_sleep = false;
    bool plateau = false;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& flags) {
    cmd->add_option("--seed", flags.seed, "RNG seed (default 0)");
    cmd->add_option("--phase1-cap", flags.phase1_cap, "override the phase-1 iteration cap");
    cmd->add_option("--phase2-cap", flags.phase2_cap, "override the phase-2 iteration cap");
    cmd->add_option("--stall-cap", flags.stall_cap,
                    "phase-2 iterations without improvement before stopping");
    cmd->add_option("--selector", flags.selector, "phase-2 nurse selection")
        ->check(CLI::IsMember({"most", "least"}));
    cmd->add_option("--swap", flags.swap, "phase-2 swap semantics")
        ->check(CLI::IsMember({"within-day", "cross-day"}));
    cmd->add_flag("--strict-sleep", flags.strict_sleep,
                  "count sleep days only after 3+ night runs and narrow the rest-rest "
                  "exemption to 4-night runs");
    cmd->add_flag("--plateau", flags.plateau, "phase 1 also accepts equal-feasibility swaps");
}

SolverConfig to_config(const SolverFlags& flags) {
    SolverConfig config;
    config.seed = flags.seed;
    config.phase1_iter_cap = flags.phase1_cap;
    config.phase2_iter_cap = flags.phase2_cap;
    config.stall_cap = flags.stall_cap;
    config.selector =
        flags.selector == "least" ? Selector::LeastContributing : Selector::MostContributing;
    config.swap_mode = flags.swap == "cross-day" ? SwapMode::CrossDay : SwapMode::WithinDay;
    return config;
}

Instance load_with_flags(const std::string& path, const SolverFlags& flags) {
    Instance instance = load_instance(path);
    if (flags.strict_sleep) {
        instance.strict_sleep = true;
        instance.penalty_table.strict_rest_exemption = true;
    }
    return instance;
}

json report_record(const SolveResult& result) {
    return json{{"seed", result.report.seed},
                {"status", std::string(solve_status_name(result.status))},
                {"converged", result.report.converged},
                {"feasibility", result.report.feasibility},
                {"objective", result.report.objective},
                {"phase1_iterations", result.report.phase1_iterations},
                {"phase2_iterations", result.report.phase2_iterations},
                {"phase1_seconds", result.report.phase1_seconds},
                {"phase2_seconds", result.report.phase2_seconds}};
}

int run_solve(const std::string& instance_path, const std::string& out_path,
              const SolverFlags& flags) {
    const Instance instance = load_with_flags(instance_path, flags);
    const SolveResult result = solve(instance, to_config(flags));

    if (result.status == SolveStatus::InfeasibleSupply) {
        std::cout << "status: " << solve_status_name(result.status) << "\n"
                  << "supply: " << result.supply.supply
                  << "  demand: " << result.supply.demand << "\n";
        for (const auto& deficit : result.supply.per_cell_deficits) {
            std::cout << "deficit: shift " << shift_code(deficit.shift) << ", ward "
                      << deficit.ward << ", day " << deficit.day << ": needs "
                      << deficit.required << ", only " << deficit.available
                      << " skilled nurses available\n";
        }
        std::cout << report_record(result).dump() << "\n";
        return kExitInfeasible;
    }

    write_roster(result.roster, std::filesystem::path(out_path));

    std::printf("status: %s\n", std::string(solve_status_name(result.status)).c_str());
    std::printf("feasibility: %.1f%%\n", result.report.feasibility * 100.0);
    std::printf("objective: %lld\n", result.report.objective);
    std::printf("phase1: %llu iterations in %.3f s\n",
                static_cast<unsigned long long>(result.report.phase1_iterations),
                result.report.phase1_seconds);
    std::printf("phase2: %llu iterations in %.3f s\n",
                static_cast<unsigned long long>(result.report.phase2_iterations),
                result.report.phase2_seconds);
    std::printf("roster written to %s\n", out_path.c_str());
    std::cout << report_record(result).dump() << "\n";

    return result.status == SolveStatus::Converged ? kExitOk : kExitPhase1Exhausted;
}

int run_check(const std::string& instance_path, const std::string& roster_path,
              const SolverFlags& flags) {
    const Instance instance = load_with_flags(instance_path, flags);
    const Roster roster = load_roster(roster_path);
    if (!instance.shape_matches(roster)) {
        std::cerr << "error: roster is " << roster.nurse_count << "x" << roster.day_count
                  << " but the instance needs " << instance.nurse_count << "x"
                  << instance.day_count << "\n";
        return kExitError;
    }

    const FeasibilityResult result = feasibility(roster, instance);
    const long long cost = objective(roster, instance.penalty_table);
    std::printf("feasibility %.1f%% (%lld/%lld)\n", result.fraction * 100.0,
                result.report.satisfied_count, result.report.total_count);
    std::cout << to_table(result.report);
    std::printf("objective: %lld\n", cost);
    std::cout << json{{"type", "check"},
                      {"feasibility", result.fraction},
                      {"violations", result.report.entries.size()},
                      {"objective", cost}}
                     .dump()
              << "\n";
    return result.report.feasible() ? kExitOk : kExitRosterInfeasible;
}

int run_bench(const std::string& instance_path, int runs, const std::string& out_path,
              const SolverFlags& flags) {
    const Instance instance = load_with_flags(instance_path, flags);

    // Runs are independent: one seed per run, results slotted by index so the
    // output order never depends on scheduling.
    std::vector<SolveResult> results(runs);
    std::atomic<int> next{0};
    const int workers =
        std::max(1, std::min<int>(runs, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int k = next.fetch_add(1); k < runs; k = next.fetch_add(1)) {
                SolverConfig config = to_config(flags);
                config.seed = flags.seed + static_cast<std::uint64_t>(k);
                results[k] = solve(instance, config);
            }
        });
    }
    for (auto& t : pool) t.join();

    std::ofstream record_file;
    if (!out_path.empty()) {
        record_file.open(out_path);
        if (!record_file) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return kExitError;
        }
    }

    int successes = 0;
    std::vector<double> phase1_seconds, phase2_seconds;
    std::vector<long long> objectives;
    for (const SolveResult& result : results) {
        if (result.report.converged) {
            ++successes;
            objectives.push_back(result.report.objective);
        }
        phase1_seconds.push_back(result.report.phase1_seconds);
        phase2_seconds.push_back(result.report.phase2_seconds);
        json record = report_record(result);
        record["type"] = "run";
        std::cout << record.dump() << "\n";
        if (record_file) record_file << record.dump() << "\n";
    }

    const auto median = [](std::vector<double> v) {
        if (v.empty()) return 0.0;
        std::sort(v.begin(), v.end());
        return v.size() % 2 ? v[v.size() / 2]
                            : (v[v.size() / 2 - 1] + v[v.size() / 2]) / 2.0;
    };
    const auto mean = [](const std::vector<double>& v) {
        if (v.empty()) return 0.0;
        double total = 0;
        for (double x : v) total += x;
        return total / static_cast<double>(v.size());
    };

    const double success_rate = static_cast<double>(successes) / runs;
    std::sort(objectives.begin(), objectives.end());
    std::printf("runs: %d  success_rate: %.1f%%\n", runs, success_rate * 100.0);
    std::printf("phase1 seconds: mean %.4f  median %.4f\n", mean(phase1_seconds),
                median(phase1_seconds));
    std::printf("phase2 seconds: mean %.4f  median %.4f\n", mean(phase2_seconds),
                median(phase2_seconds));
    if (!objectives.empty()) {
        std::printf("objective: min %lld  median %lld  max %lld\n", objectives.front(),
                    objectives[objectives.size() / 2], objectives.back());
    }

    json summary{{"type", "bench"},
                 {"runs", runs},
                 {"successes", successes},
                 {"success_rate", success_rate},
                 {"phase1_seconds_mean", mean(phase1_seconds)},
                 {"phase1_seconds_median", median(phase1_seconds)},
                 {"phase2_seconds_mean", mean(phase2_seconds)},
                 {"phase2_seconds_median", median(phase2_seconds)}};
    if (!objectives.empty()) {
        summary["objective_min"] = objectives.front();
        summary["objective_median"] = objectives[objectives.size() / 2];
        summary["objective_max"] = objectives.back();
    }
    std::cout << summary.dump() << "\n";
    if (record_file) record_file << summary.dump() << "\n";
    return kExitOk;
}

int run_oracle(const std::string& instance_path, int budget, const std::string& out_path,
               const SolverFlags& flags) {
    const Instance instance = load_with_flags(instance_path, flags);
    const OracleResult result = brute_force(instance, budget);

    if (result.status == OracleStatus::Infeasible) {
        std::printf("status: infeasible\n");
        std::printf("states: %llu\n",
                    static_cast<unsigned long long>(result.states_enumerated));
        std::cout << json{{"type", "oracle"},
                          {"status", "infeasible"},
                          {"states", result.states_enumerated}}
                         .dump()
                  << "\n";
        return kExitInfeasible;
    }

    std::printf("status: optimal\n");
    std::printf("objective: %lld\n", result.best_objective);
    std::printf("states: %llu\n", static_cast<unsigned long long>(result.states_enumerated));
    if (!out_path.empty()) {
        write_roster(result.witness, std::filesystem::path(out_path));
        std::printf("witness written to %s\n", out_path.c_str());
    } else {
        std::ostringstream grid;
        write_roster(result.witness, grid);
        std::cout << grid.str();
    }
    std::cout << json{{"type", "oracle"},
                      {"status", "optimal"},
                      {"objective", result.best_objective},
                      {"states", result.states_enumerated}}
                     .dump()
              << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-phase swap search for nurse rostering"};
    app.require_subcommand(1);

    SolverFlags flags;
    std::string instance_path, roster_path, out_path;
    int runs = 100;
    int budget = 12;

    CLI::App* solve_cmd =
        app.add_subcommand("solve", "solve an instance and write the roster");
    solve_cmd->add_option("--instance", instance_path, "instance file")->required();
    solve_cmd->add_option("--out", out_path, "output roster file")->required();
    add_solver_flags(solve_cmd, flags);

    CLI::App* check_cmd =
        app.add_subcommand("check", "evaluate a roster against an instance");
    check_cmd->add_option("--instance", instance_path, "instance file")->required();
    check_cmd->add_option("--roster", roster_path, "roster file")->required();
    check_cmd->add_flag("--strict-sleep", flags.strict_sleep,
                        "strict sleep-day and rest-rest interpretation");

    CLI::App* bench_cmd =
        app.add_subcommand("bench", "run seeded solves and summarize the outcomes");
    bench_cmd->add_option("--instance", instance_path, "instance file")->required();
    bench_cmd->add_option("--runs", runs, "number of seeded runs")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--out", out_path, "write per-run records to this file");
    add_solver_flags(bench_cmd, flags);

    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "exhaustively certify a tiny instance");
    oracle_cmd->add_option("--instance", instance_path, "instance file")->required();
    oracle_cmd->add_option("--budget", budget, "maximum nurse-day cells");
    oracle_cmd->add_option("--out", out_path, "write the optimal roster to this file");
    oracle_cmd->add_flag("--strict-sleep", flags.strict_sleep,
                         "strict sleep-day and rest-rest interpretation");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) return run_solve(instance_path, out_path, flags);
        if (check_cmd->parsed()) return run_check(instance_path, roster_path, flags);
        if (bench_cmd->parsed()) return run_bench(instance_path, runs, out_path, flags);
        if (oracle_cmd->parsed()) return run_oracle(instance_path, budget, out_path, flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
