#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "rostering/constraints.hpp"
#include "rostering/instance.hpp"
#include "rostering/penalty.hpp"
#include "rostering/roster.hpp"

namespace rostering {

/// Uniform draw from [0, n). Hand-rolled rejection sampling on top of the
/// engine's raw output: std::uniform_int_distribution is implementation
/// defined, which would break seed-for-seed reproducibility across standard
/// libraries.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t reject_below = (0 - n) % n;  // 2^64 mod n
    for (;;) {
        const std::uint64_t x = rng();
        if (x >= reject_below) return x % n;
    }
}

enum class Selector {
    MostContributing,   // pick the nurse with the highest penalty
    LeastContributing,  // prose variant: lowest penalty
};

enum class SwapMode {
    WithinDay,  // exchange both nurses' cells on day i and on day j
    CrossDay,   // exchange nurse n's day-i cell with nurse m's day-j cell
};

struct SolverConfig {
    std::uint64_t seed = 0;
    // Unset caps fall back to the instance's values.
    std::optional<std::uint64_t> phase1_iter_cap;
    std::optional<std::uint64_t> phase2_iter_cap;
    // Consecutive non-improving phase-2 iterations before giving up;
    // effectively capped by the phase-2 iteration cap.
    std::uint64_t stall_cap = 100'000;
    Selector selector = Selector::MostContributing;
    SwapMode swap_mode = SwapMode::WithinDay;
    bool plateau = false;  // phase 1 also accepts equal-feasibility swaps
    // Cross-checks incremental bookkeeping against full recomputation after
    // every accepted move. Defaults on in debug builds.
#ifdef NDEBUG
    bool self_check = false;
#else
    bool self_check = true;
#endif
};

/// Accepted-move log: the starting value of each phase followed by the value
/// after every accepted swap.
struct SolveTrace {
    std::vector<double> phase1_feasibility;
    std::vector<long long> phase2_objective;
    std::vector<double> phase2_feasibility;
};

struct SolveReport {
    std::uint64_t phase1_iterations = 0;
    std::uint64_t phase2_iterations = 0;
    double phase1_seconds = 0.0;
    double phase2_seconds = 0.0;
    double feasibility = 0.0;
    long long objective = 0;
    bool converged = false;
    std::uint64_t seed = 0;
};

enum class SolveStatus { Converged, InfeasibleSupply, Phase1Exhausted };

std::string_view solve_status_name(SolveStatus status);

struct SolveResult {
    SolveStatus status = SolveStatus::Converged;
    Roster roster;  // best roster seen, returned even on failure
    SolveReport report;
    SupplyDemandReport supply;
};

/// Deterministic starting grid: leave days rest, then D - leave - g_min
/// working cells per nurse, cycled morning/afternoon/night and packed
/// left-to-right over the non-leave days. The rng parameter is reserved for
/// randomized variants and is not drawn from.
Roster initial_roster(const Instance& instance, std::mt19937_64& rng);

struct Phase1Result {
    Roster roster;
    std::uint64_t iterations = 0;
    double feasibility = 0.0;
};

/// Same-nurse repair: random (nurse, day, day) swaps, kept only when the
/// feasibility fraction strictly improves (or stays equal with plateau on).
/// Stops at full feasibility or the iteration cap; returns the best roster.
Phase1Result phase1(Roster roster, const Instance& instance, const SolverConfig& config,
                    std::mt19937_64& rng, SolveTrace* trace = nullptr);

struct Phase2Result {
    Roster roster;
    std::uint64_t iterations = 0;
    long long objective = 0;
};

/// Cross-nurse refinement from a hard-feasible roster: the selected nurse
/// trades two days with a random partner; moves that break a hard constraint
/// or fail to strictly reduce the objective are reverted. Stops at objective
/// zero, the iteration cap, or stall_cap non-improving iterations in a row.
Phase2Result phase2(Roster roster, const Instance& instance, const SolverConfig& config,
                    std::mt19937_64& rng, SolveTrace* trace = nullptr);

/// Full pipeline: supply/demand screen, initial grid, phase 1, then phase 2
/// only once every hard constraint holds. Same (instance, seed, flags) yields
/// a bit-identical roster.
SolveResult solve(const Instance& instance, const SolverConfig& config,
                  SolveTrace* trace = nullptr);

}  // namespace rostering
