#pragma once

#include <string>
#include <vector>

#include "rostering/instance.hpp"
#include "rostering/roster.hpp"

namespace rostering {

enum class ConstraintId { H1, H2, H3, H4, H5 };

std::string_view constraint_name(ConstraintId id);

struct Violation {
    ConstraintId id;
    int nurse = -1;                      // -1 when the constraint is not per-nurse (H3)
    ShiftKind shift = ShiftKind::Rest;   // H3 only
    int ward = -1;                       // H3 only
    int day = -1;                        // start day / window / boundary; -1 for H1
    std::string detail;
};

struct ViolationReport {
    std::vector<Violation> entries;
    long long satisfied_count = 0;
    long long total_count = 0;

    bool feasible() const { return entries.empty(); }
};

// H1: every nurse needs at least g_min countable rest days. A rest day right
// after a night shift is a sleep day and does not count (in strict mode only
// when it follows a run of three or more nights).
std::vector<Violation> check_h1(const Roster& roster, const Instance& instance);

// H2: no k_max consecutive working days; a run of exactly three nights must be
// followed by two rest cells, a run of exactly four by three rest cells, and
// five or more consecutive nights are always illegal. Requirements that fall
// past the end of the horizon are not flagged.
std::vector<Violation> check_h2(const Roster& roster, const Instance& instance);

// H3: every (shift, ward, day) cell with positive demand needs at least that
// many skilled nurses assigned.
std::vector<Violation> check_h3(const Roster& roster, const Instance& instance);

// H4: a nurse on approved leave must rest that day.
std::vector<Violation> check_h4(const Roster& roster, const Instance& instance);

// H5: a night shift must not be followed by a morning shift the next day.
// The within-day pairings need no check: the grid holds one shift per cell.
std::vector<Violation> check_h5(const Roster& roster, const Instance& instance);

/// Number of constraint instances for a fixed Instance. Independent of any
/// roster, so feasibility fractions share one denominator.
long long constraint_universe_size(const Instance& instance);

/// Violated H1 + H2 + H5 instances for a single nurse's row; the solver's
/// incremental bookkeeping refreshes one row at a time with this.
int count_row_violations(std::span<const ShiftKind> row, const Instance& instance);

struct FeasibilityResult {
    double fraction = 0.0;
    ViolationReport report;
};

/// Fraction of satisfied constraint instances plus the full violation list.
/// Returns fraction 1.0 exactly when the roster is hard-feasible.
FeasibilityResult feasibility(const Roster& roster, const Instance& instance);

/// One line per violation: `<id>\t<nurse|->\t<location>\t<detail>`.
std::string to_table(const ViolationReport& report);

}  // namespace rostering
