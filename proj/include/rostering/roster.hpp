#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace rostering {

/// Per-day assignment of one nurse. Grid files use the numeric codes:
/// 0 = rest, 1 = morning, 2 = afternoon, 3 = night.
enum class ShiftKind : std::uint8_t {
    Rest = 0,
    Morning = 1,
    Afternoon = 2,
    Night = 3,
};

constexpr bool is_working(ShiftKind s) { return s != ShiftKind::Rest; }

constexpr int shift_code(ShiftKind s) { return static_cast<int>(s); }

inline ShiftKind shift_from_code(int code) {
    if (code < 0 || code > 3) {
        throw std::invalid_argument("shift code must be 0..3, got " + std::to_string(code));
    }
    return static_cast<ShiftKind>(code);
}

inline constexpr std::array<ShiftKind, 3> working_shifts = {
    ShiftKind::Morning, ShiftKind::Afternoon, ShiftKind::Night};

/// Dense nurse-by-day assignment grid. Exactly one ShiftKind per cell, so a
/// nurse can never hold two shifts on the same day.
struct Roster {
    int nurse_count = 0;
    int day_count = 0;
    std::vector<ShiftKind> cells;  // row-major, nurse_count x day_count

    Roster() = default;
    Roster(int nurses, int days)
        : nurse_count(nurses),
          day_count(days),
          cells(static_cast<std::size_t>(nurses) * days, ShiftKind::Rest) {}

    ShiftKind at(int nurse, int day) const {
        return cells[static_cast<std::size_t>(nurse) * day_count + day];
    }
    ShiftKind& at(int nurse, int day) {
        return cells[static_cast<std::size_t>(nurse) * day_count + day];
    }

    std::span<const ShiftKind> row(int nurse) const {
        return {cells.data() + static_cast<std::size_t>(nurse) * day_count,
                static_cast<std::size_t>(day_count)};
    }

    bool operator==(const Roster&) const = default;
};

}  // namespace rostering
