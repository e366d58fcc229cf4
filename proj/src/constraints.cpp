#include "rostering/constraints.hpp"

#include <algorithm>
#include <sstream>

namespace rostering {

namespace {

// Length of the night run ending at day `j` (inclusive), 0 if day j is not a
// night shift.
int night_run_ending_at(std::span<const ShiftKind> row, int j) {
    int len = 0;
    while (j - len >= 0 && row[j - len] == ShiftKind::Night) ++len;
    return len;
}

bool is_sleep_day(std::span<const ShiftKind> row, int j, bool strict) {
    if (row[j] != ShiftKind::Rest || j == 0 || row[j - 1] != ShiftKind::Night) {
        return false;
    }
    return !strict || night_run_ending_at(row, j - 1) >= 3;
}

int countable_rest_days(std::span<const ShiftKind> row, bool strict) {
    int count = 0;
    for (int j = 0; j < static_cast<int>(row.size()); ++j) {
        if (row[j] == ShiftKind::Rest && !is_sleep_day(row, j, strict)) ++count;
    }
    return count;
}

int h1_row(std::span<const ShiftKind> row, const Instance& instance, int nurse,
           std::vector<Violation>* out) {
    const int rest = countable_rest_days(row, instance.strict_sleep);
    if (rest >= instance.g_min) return 0;
    if (out) {
        std::ostringstream detail;
        detail << "only " << rest << " countable rest days, needs " << instance.g_min;
        out->push_back({ConstraintId::H1, nurse, ShiftKind::Rest, -1, -1, detail.str()});
    }
    return 1;
}

// Night runs of exactly 3 need 2 trailing rest cells, runs of exactly 4 need
// 3 (sleep day plus the stated rest days). Cells past the horizon are left to
// the next planning period.
int night_run_violation(std::span<const ShiftKind> row, int nurse, int start, int len,
                        std::vector<Violation>* out) {
    if (len != 3 && len != 4) return 0;
    const int required = len - 1;
    const int day_count = static_cast<int>(row.size());
    for (int q = start + len; q < std::min(start + len + required, day_count); ++q) {
        if (row[q] != ShiftKind::Rest) {
            if (out) {
                std::ostringstream detail;
                detail << len << " consecutive nights from day " << start << " need "
                       << required << " rest days, day " << q << " is not rest";
                out->push_back({ConstraintId::H2, nurse, ShiftKind::Rest, -1, start,
                                detail.str()});
            }
            return 1;
        }
    }
    return 0;
}

int h2_row(std::span<const ShiftKind> row, const Instance& instance, int nurse,
           std::vector<Violation>* out) {
    const int D = static_cast<int>(row.size());
    const int K = instance.k_max;
    int count = 0;

    for (int j = 0; j + K <= D; ++j) {
        const bool all_working = std::all_of(row.begin() + j, row.begin() + j + K,
                                             [](ShiftKind s) { return is_working(s); });
        if (!all_working) continue;
        ++count;
        if (out) {
            std::ostringstream detail;
            detail << K << " consecutive working days starting day " << j;
            out->push_back({ConstraintId::H2, nurse, ShiftKind::Rest, -1, j, detail.str()});
        }
    }

    for (int start = 0; start < D;) {
        if (row[start] != ShiftKind::Night) {
            ++start;
            continue;
        }
        int len = 0;
        while (start + len < D && row[start + len] == ShiftKind::Night) ++len;
        count += night_run_violation(row, nurse, start, len, out);
        for (int j = start; j + 5 <= start + len; ++j) {
            ++count;
            if (out) {
                out->push_back({ConstraintId::H2, nurse, ShiftKind::Rest, -1, j,
                                "5 consecutive nights starting day " + std::to_string(j)});
            }
        }
        start += len;
    }
    return count;
}

int h5_row(std::span<const ShiftKind> row, const Instance& instance, int nurse,
           std::vector<Violation>* out) {
    if (!instance.h5_enabled) return 0;
    int count = 0;
    for (int j = 0; j + 1 < static_cast<int>(row.size()); ++j) {
        if (row[j] == ShiftKind::Night && row[j + 1] == ShiftKind::Morning) {
            ++count;
            if (out) {
                out->push_back({ConstraintId::H5, nurse, ShiftKind::Rest, -1, j,
                                "night on day " + std::to_string(j) +
                                    " followed by morning on day " + std::to_string(j + 1)});
            }
        }
    }
    return count;
}

}  // namespace

std::string_view constraint_name(ConstraintId id) {
    switch (id) {
        case ConstraintId::H1: return "H1";
        case ConstraintId::H2: return "H2";
        case ConstraintId::H3: return "H3";
        case ConstraintId::H4: return "H4";
        case ConstraintId::H5: return "H5";
    }
    return "?";
}

std::vector<Violation> check_h1(const Roster& roster, const Instance& instance) {
    std::vector<Violation> out;
    for (int i = 0; i < instance.nurse_count; ++i) {
        h1_row(roster.row(i), instance, i, &out);
    }
    return out;
}

std::vector<Violation> check_h2(const Roster& roster, const Instance& instance) {
    std::vector<Violation> out;
    for (int i = 0; i < instance.nurse_count; ++i) {
        h2_row(roster.row(i), instance, i, &out);
    }
    return out;
}

std::vector<Violation> check_h3(const Roster& roster, const Instance& instance) {
    std::vector<Violation> out;
    for (ShiftKind shift : working_shifts) {
        for (int t = 0; t < instance.ward_count; ++t) {
            for (int j = 0; j < instance.day_count; ++j) {
                const int required = instance.demand_at(shift, t, j);
                if (required == 0) continue;
                int assigned = 0;
                for (int i = 0; i < instance.nurse_count; ++i) {
                    if (instance.skilled(i, t) && roster.at(i, j) == shift) ++assigned;
                }
                if (assigned < required) {
                    std::ostringstream detail;
                    detail << assigned << " of " << required << " skilled nurses on shift "
                           << shift_code(shift) << ", ward " << t << ", day " << j;
                    out.push_back({ConstraintId::H3, -1, shift, t, j, detail.str()});
                }
            }
        }
    }
    return out;
}

std::vector<Violation> check_h4(const Roster& roster, const Instance& instance) {
    std::vector<Violation> out;
    for (int i = 0; i < instance.nurse_count; ++i) {
        for (int j = 0; j < instance.day_count; ++j) {
            if (instance.on_leave(i, j) && roster.at(i, j) != ShiftKind::Rest) {
                out.push_back({ConstraintId::H4, i, ShiftKind::Rest, -1, j,
                               "assigned shift " + std::to_string(shift_code(roster.at(i, j))) +
                                   " on approved leave day " + std::to_string(j)});
            }
        }
    }
    return out;
}

std::vector<Violation> check_h5(const Roster& roster, const Instance& instance) {
    std::vector<Violation> out;
    for (int i = 0; i < instance.nurse_count; ++i) {
        h5_row(roster.row(i), instance, i, &out);
    }
    return out;
}

long long constraint_universe_size(const Instance& instance) {
    const long long n = instance.nurse_count;
    const long long D = instance.day_count;

    long long per_nurse_h2 = std::max<long long>(0, D - instance.k_max + 1);
    per_nurse_h2 += std::max<long long>(0, D - 2);  // exactly-3-night positions
    per_nurse_h2 += std::max<long long>(0, D - 3);  // exactly-4-night positions
    per_nurse_h2 += std::max<long long>(0, D - 4);  // 5-night windows

    long long h3 = 0;
    for (int v : instance.demand) h3 += v > 0;

    long long h4 = 0;
    for (std::uint8_t v : instance.leave) h4 += v != 0;

    const long long h5 = instance.h5_enabled ? n * (D - 1) : 0;

    return n + n * per_nurse_h2 + h3 + h4 + h5;
}

int count_row_violations(std::span<const ShiftKind> row, const Instance& instance) {
    return h1_row(row, instance, -1, nullptr) + h2_row(row, instance, -1, nullptr) +
           h5_row(row, instance, -1, nullptr);
}

FeasibilityResult feasibility(const Roster& roster, const Instance& instance) {
    FeasibilityResult result;
    auto& entries = result.report.entries;
    for (auto&& batch : {check_h1(roster, instance), check_h2(roster, instance),
                         check_h3(roster, instance), check_h4(roster, instance),
                         check_h5(roster, instance)}) {
        entries.insert(entries.end(), batch.begin(), batch.end());
    }
    result.report.total_count = constraint_universe_size(instance);
    result.report.satisfied_count =
        result.report.total_count - static_cast<long long>(entries.size());
    result.fraction = result.report.total_count == 0
                          ? 1.0
                          : static_cast<double>(result.report.satisfied_count) /
                                static_cast<double>(result.report.total_count);
    return result;
}

std::string to_table(const ViolationReport& report) {
    std::ostringstream out;
    for (const Violation& v : report.entries) {
        out << constraint_name(v.id) << '\t';
        if (v.nurse >= 0) {
            out << v.nurse;
        } else {
            out << '-';
        }
        out << '\t';
        if (v.id == ConstraintId::H3) {
            out << 's' << shift_code(v.shift) << 'w' << v.ward << 'd' << v.day;
        } else if (v.day >= 0) {
            out << 'd' << v.day;
        } else {
            out << '-';
        }
        out << '\t' << v.detail << '\n';
    }
    return out.str();
}

}  // namespace rostering
