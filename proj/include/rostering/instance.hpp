#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rostering/penalty.hpp"
#include "rostering/roster.hpp"

namespace rostering {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Full problem definition: staffing demand, skills, leave plans and the
/// search parameters. Immutable after construction; all solver state lives
/// elsewhere.
struct Instance {
    int nurse_count = 0;
    int day_count = 0;
    int ward_count = 0;
    int g_min = 0;  // minimum countable rest days per nurse over the horizon
    int k_max = 1;  // length of the all-working window that is forbidden
    std::uint64_t phase1_iter_cap = 1'000'000;
    std::uint64_t phase2_iter_cap = 10'000;
    bool h5_enabled = true;     // night->morning transition check on/off
    bool strict_sleep = false;  // runtime toggle, not part of the file format

    std::vector<std::uint8_t> skills;  // nurse_count x ward_count, 0/1
    std::vector<std::uint8_t> leave;   // nurse_count x day_count, 0/1
    std::vector<int> demand;           // 3 working shifts x ward_count x day_count
    PenaltyTable penalty_table;

    bool skilled(int nurse, int ward) const {
        return skills[static_cast<std::size_t>(nurse) * ward_count + ward] != 0;
    }
    bool on_leave(int nurse, int day) const {
        return leave[static_cast<std::size_t>(nurse) * day_count + day] != 0;
    }
    int demand_at(ShiftKind shift, int ward, int day) const {
        const auto s = static_cast<std::size_t>(shift_code(shift) - 1);
        return demand[(s * ward_count + ward) * day_count + day];
    }
    int& demand_at(ShiftKind shift, int ward, int day) {
        const auto s = static_cast<std::size_t>(shift_code(shift) - 1);
        return demand[(s * ward_count + ward) * day_count + day];
    }

    int leave_days(int nurse) const {
        int total = 0;
        for (int j = 0; j < day_count; ++j) total += on_leave(nurse, j);
        return total;
    }

    bool shape_matches(const Roster& roster) const {
        return roster.nurse_count == nurse_count && roster.day_count == day_count;
    }

    /// Throws ValidationError naming the violated invariant.
    void validate() const;

    bool operator==(const Instance&) const = default;
};

struct CellDeficit {
    ShiftKind shift = ShiftKind::Morning;
    int ward = 0;
    int day = 0;
    int required = 0;
    int available = 0;

    bool operator==(const CellDeficit&) const = default;
};

struct SupplyDemandReport {
    long long supply = 0;
    long long demand = 0;
    std::vector<CellDeficit> per_cell_deficits;
    bool feasible = true;
};

/// Pre-search screen: aggregate supply (assignable nurse-days after leave and
/// minimum rest) against total demand, plus a per-cell check that enough
/// skilled, not-on-leave nurses exist for every demanded cell. The caller
/// terminates when the report says infeasible.
SupplyDemandReport supply_demand_check(const Instance& instance);

}  // namespace rostering
