#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rostering/roster.hpp"

namespace rostering {

/// Classification token for penalty patterns. AM/PM/N/RD map one-to-one onto
/// Morning/Afternoon/Night/Rest; W is a pattern-only wildcard matching any
/// working class (AM, PM or N), never RD.
enum class DayClass : std::uint8_t { AM, PM, N, RD, W };

constexpr DayClass classify(ShiftKind s) {
    switch (s) {
        case ShiftKind::Morning: return DayClass::AM;
        case ShiftKind::Afternoon: return DayClass::PM;
        case ShiftKind::Night: return DayClass::N;
        case ShiftKind::Rest: break;
    }
    return DayClass::RD;
}

std::string_view day_class_token(DayClass c);

/// Parses a dash-separated pattern such as "N-N-PM" or "RD-W-RD".
/// Throws std::invalid_argument on unknown tokens or fewer than two tokens.
std::vector<DayClass> parse_pattern(std::string_view text);

std::string pattern_to_string(std::span<const DayClass> pattern);

struct PenaltyRule {
    std::vector<DayClass> pattern;  // length >= 2
    long long cost = 0;             // negative = positive preference

    bool operator==(const PenaltyRule&) const = default;
};

/// Ordered preference rules shared by all nurses, with optional per-nurse
/// replacement lists. A nurse listed in `overrides` is scored against its own
/// rule list instead of the shared one.
struct PenaltyTable {
    std::vector<PenaltyRule> rules;
    std::map<int, std::vector<PenaltyRule>> overrides;
    // Strict mode narrows the RD-RD exemption to rest that directly follows
    // four consecutive nights instead of any single night.
    bool strict_rest_exemption = false;

    bool operator==(const PenaltyTable&) const = default;
};

/// The stock cost table: N-N-PM 500, N-N-RD 50, N-PM 25, N-RD 25, PM-AM 10,
/// RD-RD 10, N-N-N 5000, RD-W-RD 10.
PenaltyTable default_table();

/// Total cost of one nurse's row. Every (rule, offset) match counts, so
/// overlapping and nested matches accumulate. An RD-RD match is skipped when
/// the cell just before it is a night shift (mandated post-night rest).
long long nurse_penalty(std::span<const ShiftKind> row, const PenaltyTable& table,
                        int nurse = -1);

long long objective(const Roster& roster, const PenaltyTable& table);

/// Nurses ordered by descending penalty contribution, ties broken by lower
/// nurse index.
std::vector<std::pair<int, long long>> rank_nurses_by_penalty(const Roster& roster,
                                                              const PenaltyTable& table);

}  // namespace rostering
