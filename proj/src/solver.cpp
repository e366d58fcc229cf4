#include "rostering/solver.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace rostering {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Incremental hard-constraint bookkeeping. Row-local constraints (H1, H2, H5)
// are refreshed per touched row; coverage counts back H3 and a running total
// backs H4, so a swap costs O(D + wards) instead of a full rescan.
class FeasibilityTracker {
public:
    FeasibilityTracker(const Instance& instance, Roster roster)
        : instance_(instance),
          roster_(std::move(roster)),
          universe_(constraint_universe_size(instance)),
          coverage_(instance.demand.size(), 0),
          row_violations_(instance.nurse_count, 0) {
        rebuild();
    }

    const Roster& roster() const { return roster_; }
    Roster take_roster() { return std::move(roster_); }
    ShiftKind at(int nurse, int day) const { return roster_.at(nurse, day); }

    long long violations() const { return row_total_ + h3_total_ + h4_total_; }
    double fraction() const {
        return universe_ == 0
                   ? 1.0
                   : static_cast<double>(universe_ - violations()) /
                         static_cast<double>(universe_);
    }

    void swap_in_row(int nurse, int day_a, int day_b) {
        const ShiftKind a = roster_.at(nurse, day_a);
        const ShiftKind b = roster_.at(nurse, day_b);
        set_cell(nurse, day_a, b);
        set_cell(nurse, day_b, a);
        refresh_row(nurse);
    }

    void exchange_between_nurses(int nurse_a, int day_a, int nurse_b, int day_b) {
        const ShiftKind a = roster_.at(nurse_a, day_a);
        const ShiftKind b = roster_.at(nurse_b, day_b);
        set_cell(nurse_a, day_a, b);
        set_cell(nurse_b, day_b, a);
        refresh_row(nurse_a);
        refresh_row(nurse_b);
    }

    // Full-recompute cross-check of the incremental state.
    void verify() const {
        const auto reference = feasibility(roster_, instance_);
        const auto expected = static_cast<long long>(reference.report.entries.size());
        if (violations() != expected) {
            throw std::logic_error("incremental feasibility bookkeeping diverged: tracked " +
                                   std::to_string(violations()) + ", full recompute " +
                                   std::to_string(expected));
        }
    }

private:
    void rebuild() {
        std::fill(coverage_.begin(), coverage_.end(), 0);
        h3_total_ = 0;
        h4_total_ = 0;
        for (int i = 0; i < instance_.nurse_count; ++i) {
            for (int j = 0; j < instance_.day_count; ++j) {
                const ShiftKind s = roster_.at(i, j);
                if (is_working(s)) {
                    for (int t = 0; t < instance_.ward_count; ++t) {
                        if (instance_.skilled(i, t)) ++coverage_[demand_index(s, t, j)];
                    }
                }
                if (instance_.on_leave(i, j) && s != ShiftKind::Rest) ++h4_total_;
            }
        }
        for (std::size_t idx = 0; idx < coverage_.size(); ++idx) {
            if (instance_.demand[idx] > 0 && coverage_[idx] < instance_.demand[idx]) {
                ++h3_total_;
            }
        }
        row_total_ = 0;
        for (int i = 0; i < instance_.nurse_count; ++i) {
            row_violations_[i] = count_row_violations(roster_.row(i), instance_);
            row_total_ += row_violations_[i];
        }
    }

    std::size_t demand_index(ShiftKind s, int ward, int day) const {
        return (static_cast<std::size_t>(shift_code(s) - 1) * instance_.ward_count + ward) *
                   instance_.day_count +
               day;
    }

    void bump_coverage(ShiftKind s, int nurse, int day, int delta) {
        for (int t = 0; t < instance_.ward_count; ++t) {
            if (!instance_.skilled(nurse, t)) continue;
            const std::size_t idx = demand_index(s, t, day);
            const int required = instance_.demand[idx];
            const int before = coverage_[idx];
            coverage_[idx] += delta;
            if (required > 0) {
                h3_total_ += (coverage_[idx] < required) - (before < required);
            }
        }
    }

    void set_cell(int nurse, int day, ShiftKind value) {
        const ShiftKind old = roster_.at(nurse, day);
        if (old == value) return;
        if (is_working(old)) bump_coverage(old, nurse, day, -1);
        if (is_working(value)) bump_coverage(value, nurse, day, +1);
        if (instance_.on_leave(nurse, day)) {
            h4_total_ += (value != ShiftKind::Rest) - (old != ShiftKind::Rest);
        }
        roster_.at(nurse, day) = value;
    }

    void refresh_row(int nurse) {
        const int fresh = count_row_violations(roster_.row(nurse), instance_);
        row_total_ += fresh - row_violations_[nurse];
        row_violations_[nurse] = fresh;
    }

    const Instance& instance_;
    Roster roster_;
    long long universe_;
    std::vector<int> coverage_;  // skilled assignees per (shift, ward, day)
    std::vector<int> row_violations_;
    long long row_total_ = 0;
    long long h3_total_ = 0;
    long long h4_total_ = 0;
};

std::array<int, 4> shift_histogram(std::span<const ShiftKind> cells) {
    std::array<int, 4> counts{};
    for (ShiftKind s : cells) ++counts[shift_code(s)];
    return counts;
}

std::array<int, 4> column_histogram(const Roster& roster, int day) {
    std::array<int, 4> counts{};
    for (int i = 0; i < roster.nurse_count; ++i) ++counts[shift_code(roster.at(i, day))];
    return counts;
}

// Distinct pair (first uniform, second uniform over the rest).
std::pair<int, int> pick_two_distinct(std::mt19937_64& rng, int size) {
    const int first = static_cast<int>(bounded(rng, size));
    int second = static_cast<int>(bounded(rng, size - 1));
    if (second >= first) ++second;
    return {first, second};
}

int pick_partner(std::mt19937_64& rng, int size, int excluded) {
    int partner = static_cast<int>(bounded(rng, size - 1));
    if (partner >= excluded) ++partner;
    return partner;
}

}  // namespace

std::string_view solve_status_name(SolveStatus status) {
    switch (status) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::InfeasibleSupply: return "infeasible_supply";
        case SolveStatus::Phase1Exhausted: return "phase1_exhausted";
    }
    return "?";
}

Roster initial_roster(const Instance& instance, std::mt19937_64& /*rng*/) {
    Roster roster(instance.nurse_count, instance.day_count);
    for (int i = 0; i < instance.nurse_count; ++i) {
        const int target =
            std::max(0, instance.day_count - instance.leave_days(i) - instance.g_min);
        int placed = 0;
        int cycle = 0;
        for (int j = 0; j < instance.day_count; ++j) {
            if (instance.on_leave(i, j)) continue;  // stays Rest
            if (placed < target) {
                roster.at(i, j) = working_shifts[cycle % 3];
                ++cycle;
                ++placed;
            }
        }
    }
    return roster;
}

Phase1Result phase1(Roster roster, const Instance& instance, const SolverConfig& config,
                    std::mt19937_64& rng, SolveTrace* trace) {
    if (!instance.shape_matches(roster)) {
        throw std::invalid_argument("phase1: roster shape does not match the instance");
    }
    FeasibilityTracker tracker(instance, std::move(roster));
    const std::uint64_t cap = config.phase1_iter_cap.value_or(instance.phase1_iter_cap);
    const int nurse_count = instance.nurse_count;
    const int day_count = instance.day_count;

    if (trace) trace->phase1_feasibility.push_back(tracker.fraction());

    std::uint64_t iterations = 0;
    while (tracker.violations() > 0 && iterations < cap && day_count >= 2) {
        ++iterations;
        const int nurse = static_cast<int>(bounded(rng, nurse_count));
        const auto [day_a, day_b] = pick_two_distinct(rng, day_count);
        // Leave-day swaps can only break the leave constraint; skip them.
        if (instance.on_leave(nurse, day_a) || instance.on_leave(nurse, day_b)) continue;
        if (tracker.at(nurse, day_a) == tracker.at(nurse, day_b)) continue;

        const long long before = tracker.violations();
        const auto histogram_before =
            config.self_check ? shift_histogram(tracker.roster().row(nurse))
                              : std::array<int, 4>{};
        tracker.swap_in_row(nurse, day_a, day_b);
        const long long after = tracker.violations();

        const bool accept = config.plateau ? after <= before : after < before;
        if (!accept) {
            tracker.swap_in_row(nurse, day_a, day_b);
            continue;
        }
        if (config.self_check) {
            tracker.verify();
            if (histogram_before != shift_histogram(tracker.roster().row(nurse))) {
                throw std::logic_error("phase1 swap changed a nurse's shift counts");
            }
        }
        if (trace) trace->phase1_feasibility.push_back(tracker.fraction());
    }

    const double fraction = tracker.fraction();
    return {tracker.take_roster(), iterations, fraction};
}

Phase2Result phase2(Roster roster, const Instance& instance, const SolverConfig& config,
                    std::mt19937_64& rng, SolveTrace* trace) {
    if (!instance.shape_matches(roster)) {
        throw std::invalid_argument("phase2: roster shape does not match the instance");
    }
    FeasibilityTracker tracker(instance, std::move(roster));
    if (tracker.violations() != 0) {
        throw std::invalid_argument("phase2 requires a hard-feasible roster");
    }

    const PenaltyTable& table = instance.penalty_table;
    const int nurse_count = instance.nurse_count;
    const int day_count = instance.day_count;

    std::vector<long long> per_nurse(nurse_count, 0);
    long long total = 0;
    for (int i = 0; i < nurse_count; ++i) {
        per_nurse[i] = nurse_penalty(tracker.roster().row(i), table, i);
        total += per_nurse[i];
    }

    const std::uint64_t cap = config.phase2_iter_cap.value_or(instance.phase2_iter_cap);
    const std::uint64_t stall_cap = std::min(config.stall_cap, cap);

    if (trace) {
        trace->phase2_objective.push_back(total);
        trace->phase2_feasibility.push_back(tracker.fraction());
    }

    std::uint64_t iterations = 0;
    std::uint64_t stall = 0;
    while (total != 0 && iterations < cap && stall < stall_cap && nurse_count >= 2 &&
           day_count >= 2) {
        ++iterations;
        int selected = 0;
        for (int i = 1; i < nurse_count; ++i) {
            const bool better = config.selector == Selector::MostContributing
                                    ? per_nurse[i] > per_nurse[selected]
                                    : per_nurse[i] < per_nurse[selected];
            if (better) selected = i;
        }
        const int partner = pick_partner(rng, nurse_count, selected);
        const auto days = pick_two_distinct(rng, day_count);
        const int day_a = days.first;
        const int day_b = days.second;

        const auto columns_before =
            config.self_check && config.swap_mode == SwapMode::WithinDay
                ? std::array{column_histogram(tracker.roster(), day_a),
                             column_histogram(tracker.roster(), day_b)}
                : std::array<std::array<int, 4>, 2>{};

        const auto apply = [&] {
            if (config.swap_mode == SwapMode::WithinDay) {
                tracker.exchange_between_nurses(selected, day_a, partner, day_a);
                tracker.exchange_between_nurses(selected, day_b, partner, day_b);
            } else {
                tracker.exchange_between_nurses(selected, day_a, partner, day_b);
            }
        };
        apply();

        if (tracker.violations() != 0) {
            apply();  // the exchange is its own inverse
            ++stall;
            continue;
        }
        const long long fresh_selected =
            nurse_penalty(tracker.roster().row(selected), table, selected);
        const long long fresh_partner =
            nurse_penalty(tracker.roster().row(partner), table, partner);
        const long long candidate =
            total - per_nurse[selected] - per_nurse[partner] + fresh_selected + fresh_partner;
        if (candidate >= total) {
            apply();
            ++stall;
            continue;
        }

        per_nurse[selected] = fresh_selected;
        per_nurse[partner] = fresh_partner;
        total = candidate;
        stall = 0;
        if (config.self_check) {
            tracker.verify();
            if (objective(tracker.roster(), table) != total) {
                throw std::logic_error("incremental objective bookkeeping diverged");
            }
            if (config.swap_mode == SwapMode::WithinDay &&
                columns_before != std::array{column_histogram(tracker.roster(), day_a),
                                             column_histogram(tracker.roster(), day_b)}) {
                throw std::logic_error("phase2 swap changed a day's shift counts");
            }
        }
        if (trace) {
            trace->phase2_objective.push_back(total);
            trace->phase2_feasibility.push_back(tracker.fraction());
        }
    }

    return {tracker.take_roster(), iterations, total};
}

SolveResult solve(const Instance& instance, const SolverConfig& config, SolveTrace* trace) {
    SolveResult result;
    result.report.seed = config.seed;
    result.supply = supply_demand_check(instance);
    if (!result.supply.feasible) {
        result.status = SolveStatus::InfeasibleSupply;
        return result;
    }

    std::mt19937_64 rng(config.seed);
    Roster start = initial_roster(instance, rng);

    const auto t1 = Clock::now();
    Phase1Result repaired = phase1(std::move(start), instance, config, rng, trace);
    result.report.phase1_seconds = seconds_since(t1);
    result.report.phase1_iterations = repaired.iterations;
    result.report.feasibility = repaired.feasibility;

    if (repaired.feasibility < 1.0) {
        result.status = SolveStatus::Phase1Exhausted;
        result.roster = std::move(repaired.roster);
        result.report.objective = objective(result.roster, instance.penalty_table);
        return result;
    }

    const auto t2 = Clock::now();
    Phase2Result refined = phase2(std::move(repaired.roster), instance, config, rng, trace);
    result.report.phase2_seconds = seconds_since(t2);
    result.report.phase2_iterations = refined.iterations;
    result.report.objective = refined.objective;
    result.report.converged = true;
    result.status = SolveStatus::Converged;
    result.roster = std::move(refined.roster);
    return result;
}

}  // namespace rostering
