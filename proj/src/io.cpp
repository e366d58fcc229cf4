#include "rostering/io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace rostering {

namespace {

struct Cursor {
    std::istream& in;
    std::string source;
    int line_number = 0;

    // Next content line with comments, blanks and trailing CR stripped.
    std::optional<std::string> next() {
        std::string line;
        while (std::getline(in, line)) {
            ++line_number;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::size_t begin = line.find_first_not_of(" \t");
            if (begin == std::string::npos) continue;
            if (line[begin] == '#') continue;
            std::size_t end = line.find_last_not_of(" \t");
            return line.substr(begin, end - begin + 1);
        }
        return std::nullopt;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(source, line_number, message);
    }
};

long long parse_int(Cursor& cursor, std::string_view text) {
    long long value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        cursor.fail("expected an integer, got '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = text.find(sep, pos);
        std::string token(text.substr(pos, next - pos));
        const std::size_t b = token.find_first_not_of(" \t");
        if (b == std::string::npos) {
            token.clear();
        } else {
            token = token.substr(b, token.find_last_not_of(" \t") - b + 1);
        }
        out.push_back(std::move(token));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

std::vector<int> parse_row(Cursor& cursor, const std::string& line, int expected) {
    std::vector<int> values;
    for (const std::string& token : split(line, ',')) {
        values.push_back(static_cast<int>(parse_int(cursor, token)));
    }
    if (static_cast<int>(values.size()) != expected) {
        cursor.fail("expected " + std::to_string(expected) + " comma-separated values, got " +
                    std::to_string(values.size()));
    }
    return values;
}

// Block header of the form [demand shift=<1|2|3> ward=<t>].
void parse_demand_header(Cursor& cursor, const std::string& line, int& shift, int& ward) {
    std::istringstream in(line.substr(1, line.size() - 2));
    std::string tag, shift_kv, ward_kv;
    in >> tag >> shift_kv >> ward_kv;
    if (tag != "demand" || shift_kv.rfind("shift=", 0) != 0 ||
        ward_kv.rfind("ward=", 0) != 0 || !in.eof()) {
        cursor.fail("malformed demand block header '" + line + "'");
    }
    shift = static_cast<int>(parse_int(cursor, std::string_view(shift_kv).substr(6)));
    ward = static_cast<int>(parse_int(cursor, std::string_view(ward_kv).substr(5)));
    if (shift < 1 || shift > 3) cursor.fail("demand shift must be 1, 2 or 3");
}

void parse_penalty_line(Cursor& cursor, const std::string& line, PenaltyTable& table) {
    std::string body = line;
    int nurse = -1;
    if (!body.empty() && body[0] == '@') {
        const std::size_t space = body.find(' ');
        if (space == std::string::npos) cursor.fail("override line needs '@<nurse> RULE,cost'");
        nurse = static_cast<int>(parse_int(cursor, std::string_view(body).substr(1, space - 1)));
        body = body.substr(space + 1);
    }
    const std::size_t comma = body.rfind(',');
    if (comma == std::string::npos) cursor.fail("penalty rule needs 'PATTERN,cost'");
    PenaltyRule rule;
    try {
        rule.pattern = parse_pattern(std::string_view(body).substr(0, comma));
    } catch (const std::invalid_argument& e) {
        cursor.fail(e.what());
    }
    rule.cost = parse_int(cursor, std::string_view(body).substr(comma + 1));
    if (nurse >= 0) {
        table.overrides[nurse].push_back(std::move(rule));
    } else {
        table.rules.push_back(std::move(rule));
    }
}

}  // namespace

Instance read_instance(std::istream& in, const std::string& source_name) {
    Cursor cursor{in, source_name};
    Instance instance;
    bool saw_n = false, saw_d = false, saw_wards = false, saw_gmin = false, saw_kmax = false;
    bool saw_skills = false, saw_leave = false, saw_penalty = false;

    std::optional<std::string> pending;
    // Headers come first.
    while ((pending = cursor.next())) {
        const std::string& line = *pending;
        if (line.front() == '[') break;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) cursor.fail("expected 'key=value' header, got '" + line + "'");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "n") {
            instance.nurse_count = static_cast<int>(parse_int(cursor, value));
            saw_n = true;
        } else if (key == "D") {
            instance.day_count = static_cast<int>(parse_int(cursor, value));
            saw_d = true;
        } else if (key == "wards") {
            instance.ward_count = static_cast<int>(parse_int(cursor, value));
            saw_wards = true;
        } else if (key == "g_min") {
            instance.g_min = static_cast<int>(parse_int(cursor, value));
            saw_gmin = true;
        } else if (key == "k_max") {
            instance.k_max = static_cast<int>(parse_int(cursor, value));
            saw_kmax = true;
        } else if (key == "phase1_iter_cap") {
            instance.phase1_iter_cap = static_cast<std::uint64_t>(parse_int(cursor, value));
        } else if (key == "phase2_iter_cap") {
            instance.phase2_iter_cap = static_cast<std::uint64_t>(parse_int(cursor, value));
        } else if (key == "h5") {
            if (value == "on") {
                instance.h5_enabled = true;
            } else if (value == "off") {
                instance.h5_enabled = false;
            } else {
                cursor.fail("h5 must be 'on' or 'off'");
            }
        } else {
            cursor.fail("unknown header '" + key + "'");
        }
    }
    if (!saw_n || !saw_d || !saw_wards || !saw_gmin || !saw_kmax) {
        cursor.fail("missing mandatory header(s); need n, D, wards, g_min, k_max");
    }
    if (instance.nurse_count < 1 || instance.day_count < 1 || instance.ward_count < 1) {
        cursor.fail("n, D and wards must be positive");
    }

    instance.skills.assign(
        static_cast<std::size_t>(instance.nurse_count) * instance.ward_count, 0);
    instance.leave.assign(
        static_cast<std::size_t>(instance.nurse_count) * instance.day_count, 0);
    instance.demand.assign(
        static_cast<std::size_t>(3) * instance.ward_count * instance.day_count, 0);

    while (pending) {
        const std::string block = *pending;
        if (block.front() != '[' || block.back() != ']') {
            cursor.fail("expected a block header, got '" + block + "'");
        }
        if (block == "[skills]") {
            saw_skills = true;
            for (int i = 0; i < instance.nurse_count; ++i) {
                const auto line = cursor.next();
                if (!line) cursor.fail("skills block needs " + std::to_string(instance.nurse_count) + " rows");
                const auto row = parse_row(cursor, *line, instance.ward_count);
                for (int t = 0; t < instance.ward_count; ++t) {
                    instance.skills[static_cast<std::size_t>(i) * instance.ward_count + t] =
                        static_cast<std::uint8_t>(row[t]);
                }
            }
            pending = cursor.next();
        } else if (block == "[leave]") {
            saw_leave = true;
            for (int i = 0; i < instance.nurse_count; ++i) {
                const auto line = cursor.next();
                if (!line) cursor.fail("leave block needs " + std::to_string(instance.nurse_count) + " rows");
                const auto row = parse_row(cursor, *line, instance.day_count);
                for (int j = 0; j < instance.day_count; ++j) {
                    instance.leave[static_cast<std::size_t>(i) * instance.day_count + j] =
                        static_cast<std::uint8_t>(row[j]);
                }
            }
            pending = cursor.next();
        } else if (block.rfind("[demand", 0) == 0) {
            int shift = 0, ward = 0;
            parse_demand_header(cursor, block, shift, ward);
            if (ward < 0 || ward >= instance.ward_count) {
                cursor.fail("demand ward " + std::to_string(ward) + " out of range");
            }
            const auto line = cursor.next();
            if (!line) cursor.fail("demand block needs one row of D values");
            const auto row = parse_row(cursor, *line, instance.day_count);
            for (int j = 0; j < instance.day_count; ++j) {
                instance.demand_at(shift_from_code(shift), ward, j) = row[j];
            }
            pending = cursor.next();
        } else if (block == "[penalty]") {
            saw_penalty = true;
            PenaltyTable table;
            while ((pending = cursor.next())) {
                if (pending->front() == '[') break;
                parse_penalty_line(cursor, *pending, table);
            }
            instance.penalty_table = std::move(table);
        } else {
            cursor.fail("unknown block '" + block + "'");
        }
    }

    if (!saw_skills) cursor.fail("missing [skills] block");
    if (!saw_leave) cursor.fail("missing [leave] block");
    if (!saw_penalty) instance.penalty_table = default_table();

    instance.validate();
    return instance;
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path.string());
    return read_instance(in, path.string());
}

void write_instance(const Instance& instance, std::ostream& out) {
    out << "n=" << instance.nurse_count << '\n';
    out << "D=" << instance.day_count << '\n';
    out << "wards=" << instance.ward_count << '\n';
    out << "g_min=" << instance.g_min << '\n';
    out << "k_max=" << instance.k_max << '\n';
    out << "phase1_iter_cap=" << instance.phase1_iter_cap << '\n';
    out << "phase2_iter_cap=" << instance.phase2_iter_cap << '\n';
    if (!instance.h5_enabled) out << "h5=off\n";

    out << "[skills]\n";
    for (int i = 0; i < instance.nurse_count; ++i) {
        for (int t = 0; t < instance.ward_count; ++t) {
            if (t > 0) out << ',';
            out << (instance.skilled(i, t) ? 1 : 0);
        }
        out << '\n';
    }

    out << "[leave]\n";
    for (int i = 0; i < instance.nurse_count; ++i) {
        for (int j = 0; j < instance.day_count; ++j) {
            if (j > 0) out << ',';
            out << (instance.on_leave(i, j) ? 1 : 0);
        }
        out << '\n';
    }

    for (ShiftKind shift : working_shifts) {
        for (int t = 0; t < instance.ward_count; ++t) {
            out << "[demand shift=" << shift_code(shift) << " ward=" << t << "]\n";
            for (int j = 0; j < instance.day_count; ++j) {
                if (j > 0) out << ',';
                out << instance.demand_at(shift, t, j);
            }
            out << '\n';
        }
    }

    out << "[penalty]\n";
    for (const PenaltyRule& rule : instance.penalty_table.rules) {
        out << pattern_to_string(rule.pattern) << ',' << rule.cost << '\n';
    }
    for (const auto& [nurse, rules] : instance.penalty_table.overrides) {
        for (const PenaltyRule& rule : rules) {
            out << '@' << nurse << ' ' << pattern_to_string(rule.pattern) << ',' << rule.cost
                << '\n';
        }
    }
}

void write_instance(const Instance& instance, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path.string());
    write_instance(instance, out);
}

Roster read_roster(std::istream& in, const std::string& source_name) {
    Cursor cursor{in, source_name};
    std::vector<std::vector<int>> rows;
    while (const auto line = cursor.next()) {
        std::vector<int> row;
        for (const std::string& token : split(*line, ',')) {
            const int code = static_cast<int>(parse_int(cursor, token));
            if (code < 0 || code > 3) cursor.fail("shift codes must be 0..3");
            row.push_back(code);
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            cursor.fail("ragged roster row: expected " + std::to_string(rows.front().size()) +
                        " values, got " + std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) cursor.fail("roster file has no rows");

    Roster roster(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int i = 0; i < roster.nurse_count; ++i) {
        for (int j = 0; j < roster.day_count; ++j) {
            roster.at(i, j) = shift_from_code(rows[i][j]);
        }
    }
    return roster;
}

Roster load_roster(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open roster file: " + path.string());
    return read_roster(in, path.string());
}

void write_roster(const Roster& roster, std::ostream& out) {
    for (int i = 0; i < roster.nurse_count; ++i) {
        for (int j = 0; j < roster.day_count; ++j) {
            if (j > 0) out << ',';
            out << shift_code(roster.at(i, j));
        }
        out << '\n';
    }
}

void write_roster(const Roster& roster, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write roster file: " + path.string());
    write_roster(roster, out);
}

}  // namespace rostering
