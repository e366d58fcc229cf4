#include "rostering/penalty.hpp"

#include <algorithm>
#include <stdexcept>

namespace rostering {

namespace {

bool matches_class(DayClass pattern_class, DayClass cell_class) {
    if (pattern_class == DayClass::W) return cell_class != DayClass::RD;
    return pattern_class == cell_class;
}

bool is_rest_rest_rule(const PenaltyRule& rule) {
    return rule.pattern.size() == 2 && rule.pattern[0] == DayClass::RD &&
           rule.pattern[1] == DayClass::RD;
}

// Mandated post-night rest is not penalized as a lazy stretch: an RD-RD match
// is skipped when it directly follows night duty. Strict mode demands the
// full four-night run the rule book talks about.
bool rest_rest_exempt(std::span<const ShiftKind> row, std::size_t offset, bool strict) {
    if (strict) {
        if (offset < 4) return false;
        for (std::size_t k = offset - 4; k < offset; ++k) {
            if (row[k] != ShiftKind::Night) return false;
        }
        return true;
    }
    return offset > 0 && row[offset - 1] == ShiftKind::Night;
}

}  // namespace

std::string_view day_class_token(DayClass c) {
    switch (c) {
        case DayClass::AM: return "AM";
        case DayClass::PM: return "PM";
        case DayClass::N: return "N";
        case DayClass::RD: return "RD";
        case DayClass::W: return "W";
    }
    return "?";
}

std::vector<DayClass> parse_pattern(std::string_view text) {
    std::vector<DayClass> pattern;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t dash = std::min(text.find('-', pos), text.size());
        const std::string_view token = text.substr(pos, dash - pos);
        if (token == "AM") {
            pattern.push_back(DayClass::AM);
        } else if (token == "PM") {
            pattern.push_back(DayClass::PM);
        } else if (token == "N") {
            pattern.push_back(DayClass::N);
        } else if (token == "RD") {
            pattern.push_back(DayClass::RD);
        } else if (token == "W") {
            pattern.push_back(DayClass::W);
        } else {
            throw std::invalid_argument("unknown pattern token '" + std::string(token) +
                                        "' in '" + std::string(text) + "'");
        }
        pos = dash + 1;
        if (dash == text.size()) break;
    }
    if (pattern.size() < 2) {
        throw std::invalid_argument("pattern needs at least two tokens: '" +
                                    std::string(text) + "'");
    }
    return pattern;
}

std::string pattern_to_string(std::span<const DayClass> pattern) {
    std::string out;
    for (std::size_t k = 0; k < pattern.size(); ++k) {
        if (k > 0) out += '-';
        out += day_class_token(pattern[k]);
    }
    return out;
}

PenaltyTable default_table() {
    PenaltyTable table;
    const auto add = [&table](std::string_view pattern, long long cost) {
        table.rules.push_back({parse_pattern(pattern), cost});
    };
    add("N-N-PM", 500);
    add("N-N-RD", 50);
    add("N-PM", 25);
    add("N-RD", 25);
    add("PM-AM", 10);
    add("RD-RD", 10);
    add("N-N-N", 5000);
    add("RD-W-RD", 10);
    return table;
}

long long nurse_penalty(std::span<const ShiftKind> row, const PenaltyTable& table,
                        int nurse) {
    const auto override_it = table.overrides.find(nurse);
    const std::vector<PenaltyRule>& rules =
        override_it != table.overrides.end() ? override_it->second : table.rules;

    long long total = 0;
    for (const PenaltyRule& rule : rules) {
        const std::size_t len = rule.pattern.size();
        if (len > row.size()) continue;
        const bool rest_rest = is_rest_rest_rule(rule);
        for (std::size_t offset = 0; offset + len <= row.size(); ++offset) {
            bool match = true;
            for (std::size_t k = 0; k < len; ++k) {
                if (!matches_class(rule.pattern[k], classify(row[offset + k]))) {
                    match = false;
                    break;
                }
            }
            if (!match) continue;
            if (rest_rest && rest_rest_exempt(row, offset, table.strict_rest_exemption)) {
                continue;
            }
            total += rule.cost;
        }
    }
    return total;
}

long long objective(const Roster& roster, const PenaltyTable& table) {
    long long total = 0;
    for (int i = 0; i < roster.nurse_count; ++i) {
        total += nurse_penalty(roster.row(i), table, i);
    }
    return total;
}

std::vector<std::pair<int, long long>> rank_nurses_by_penalty(const Roster& roster,
                                                              const PenaltyTable& table) {
    std::vector<std::pair<int, long long>> ranked;
    ranked.reserve(roster.nurse_count);
    for (int i = 0; i < roster.nurse_count; ++i) {
        ranked.emplace_back(i, nurse_penalty(roster.row(i), table, i));
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return ranked;
}

}  // namespace rostering
