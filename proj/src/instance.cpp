#include "rostering/instance.hpp"

namespace rostering {

void Instance::validate() const {
    if (nurse_count < 1) throw ValidationError("n must be >= 1");
    if (day_count < 1) throw ValidationError("D must be >= 1");
    if (ward_count < 1) throw ValidationError("wards must be >= 1");
    if (g_min < 0) throw ValidationError("g_min must be >= 0");
    if (k_max < 1 || k_max > day_count) {
        throw ValidationError("k_max must be in [1, D], got " + std::to_string(k_max));
    }
    if (phase1_iter_cap == 0) throw ValidationError("phase1_iter_cap must be positive");
    if (phase2_iter_cap == 0) throw ValidationError("phase2_iter_cap must be positive");

    const std::size_t skill_cells = static_cast<std::size_t>(nurse_count) * ward_count;
    if (skills.size() != skill_cells) {
        throw ValidationError("skills matrix must be n x wards");
    }
    for (std::uint8_t v : skills) {
        if (v > 1) throw ValidationError("skills entries must be 0 or 1");
    }

    const std::size_t leave_cells = static_cast<std::size_t>(nurse_count) * day_count;
    if (leave.size() != leave_cells) {
        throw ValidationError("leave matrix must be n x D");
    }
    for (std::uint8_t v : leave) {
        if (v > 1) throw ValidationError("leave entries must be 0 or 1");
    }

    const std::size_t demand_cells =
        static_cast<std::size_t>(3) * ward_count * day_count;
    if (demand.size() != demand_cells) {
        throw ValidationError("demand tensor must be 3 x wards x D");
    }
    for (int v : demand) {
        if (v < 0) throw ValidationError("demand entries must be >= 0");
    }

    // Patterns longer than the horizon never match; they are allowed so the
    // stock table works on desk-size instances too.
    for (const auto& [nurse, rules] : penalty_table.overrides) {
        if (nurse < 0 || nurse >= nurse_count) {
            throw ValidationError("penalty override for unknown nurse " +
                                  std::to_string(nurse));
        }
    }
}

SupplyDemandReport supply_demand_check(const Instance& instance) {
    SupplyDemandReport report;
    for (int i = 0; i < instance.nurse_count; ++i) {
        report.supply += instance.day_count - instance.leave_days(i) - instance.g_min;
    }
    for (int v : instance.demand) report.demand += v;

    for (ShiftKind shift : working_shifts) {
        for (int t = 0; t < instance.ward_count; ++t) {
            for (int j = 0; j < instance.day_count; ++j) {
                const int required = instance.demand_at(shift, t, j);
                if (required == 0) continue;
                int available = 0;
                for (int i = 0; i < instance.nurse_count; ++i) {
                    if (instance.skilled(i, t) && !instance.on_leave(i, j)) ++available;
                }
                if (available < required) {
                    report.per_cell_deficits.push_back({shift, t, j, required, available});
                }
            }
        }
    }

    report.feasible = report.demand <= report.supply && report.per_cell_deficits.empty();
    return report;
}

}  // namespace rostering
