#pragma once

#include <cstdint>
#include <stdexcept>

#include "rostering/instance.hpp"
#include "rostering/roster.hpp"

namespace rostering {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OracleStatus { Optimal, Infeasible };

struct OracleResult {
    OracleStatus status = OracleStatus::Infeasible;
    long long best_objective = 0;  // meaningful only when Optimal
    Roster witness;                // hard-feasible minimizer when Optimal
    std::uint64_t states_enumerated = 0;
};

/// Exhaustive ground truth for desk-size instances: depth-first enumeration
/// of all 4^(n*D) grids in nurse-major, day-minor order. Leave days are fixed
/// to rest, night-to-morning prefixes are cut, and a completed row that
/// breaks a row-local rule is abandoned before deeper rows are expanded;
/// surviving complete grids (counted in states_enumerated) are checked for
/// coverage and scored. Throws BudgetExceeded when n*D > cell_budget.
OracleResult brute_force(const Instance& instance, int cell_budget = 12);

}  // namespace rostering
