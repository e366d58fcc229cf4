#include "rostering/oracle.hpp"

#include <limits>

#include "rostering/constraints.hpp"
#include "rostering/penalty.hpp"

namespace rostering {

namespace {

struct Enumerator {
    const Instance& instance;
    Roster roster;
    std::vector<int> coverage;  // skilled assignees per demand cell
    int uncovered_cells = 0;    // demanded cells still below requirement
    OracleResult result;

    explicit Enumerator(const Instance& inst)
        : instance(inst),
          roster(inst.nurse_count, inst.day_count),
          coverage(inst.demand.size(), 0) {
        for (int v : inst.demand) uncovered_cells += v > 0;
        result.best_objective = std::numeric_limits<long long>::max();
    }

    std::size_t demand_index(ShiftKind s, int ward, int day) const {
        return (static_cast<std::size_t>(shift_code(s) - 1) * instance.ward_count + ward) *
                   instance.day_count +
               day;
    }

    void bump(ShiftKind s, int nurse, int day, int delta) {
        for (int t = 0; t < instance.ward_count; ++t) {
            if (!instance.skilled(nurse, t)) continue;
            const std::size_t idx = demand_index(s, t, day);
            const int required = instance.demand[idx];
            const int before = coverage[idx];
            coverage[idx] += delta;
            if (required > 0) {
                uncovered_cells += (coverage[idx] < required) - (before < required);
            }
        }
    }

    void visit(int nurse, int day) {
        if (day == instance.day_count) {
            // Row-local constraints are decidable the moment a row completes;
            // an infeasible row cannot be rescued by later rows.
            if (count_row_violations(roster.row(nurse), instance) > 0) return;
            if (nurse + 1 == instance.nurse_count) {
                leaf();
            } else {
                visit(nurse + 1, 0);
            }
            return;
        }

        if (instance.on_leave(nurse, day)) {
            roster.at(nurse, day) = ShiftKind::Rest;
            visit(nurse, day + 1);
            return;
        }

        const ShiftKind previous =
            day > 0 ? roster.at(nurse, day - 1) : ShiftKind::Rest;
        for (int code = 0; code <= 3; ++code) {
            const ShiftKind s = static_cast<ShiftKind>(code);
            if (instance.h5_enabled && s == ShiftKind::Morning &&
                previous == ShiftKind::Night) {
                continue;
            }
            roster.at(nurse, day) = s;
            if (is_working(s)) bump(s, nurse, day, +1);
            visit(nurse, day + 1);
            if (is_working(s)) bump(s, nurse, day, -1);
        }
        roster.at(nurse, day) = ShiftKind::Rest;
    }

    void leaf() {
        ++result.states_enumerated;
        if (uncovered_cells > 0) return;
        const long long cost = objective(roster, instance.penalty_table);
        if (result.status == OracleStatus::Infeasible || cost < result.best_objective) {
            result.status = OracleStatus::Optimal;
            result.best_objective = cost;
            result.witness = roster;
        }
    }
};

}  // namespace

OracleResult brute_force(const Instance& instance, int cell_budget) {
    const long long cells =
        static_cast<long long>(instance.nurse_count) * instance.day_count;
    if (cells > cell_budget) {
        throw BudgetExceeded("instance has " + std::to_string(cells) +
                             " cells, budget is " + std::to_string(cell_budget));
    }

    Enumerator enumerator(instance);
    enumerator.visit(0, 0);
    if (enumerator.result.status == OracleStatus::Infeasible) {
        enumerator.result.best_objective = 0;
    }
    return enumerator.result;
}

}  // namespace rostering
