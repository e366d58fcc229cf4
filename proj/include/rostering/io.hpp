#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "rostering/instance.hpp"
#include "rostering/roster.hpp"

namespace rostering {

struct ParseError : std::runtime_error {
    ParseError(const std::string& source, int line, const std::string& message)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
          line_number(line) {}
    int line_number;
};

// Instance files are line-oriented UTF-8: `key=value` headers (n, D, wards,
// g_min, k_max, optional phase1_iter_cap, phase2_iter_cap, h5), then labeled
// blocks [skills], [leave], [demand shift=<1|2|3> ward=<t>] and [penalty].
// Blank lines and lines starting with '#' are ignored.
Instance read_instance(std::istream& in, const std::string& source_name);
Instance load_instance(const std::filesystem::path& path);

void write_instance(const Instance& instance, std::ostream& out);
void write_instance(const Instance& instance, const std::filesystem::path& path);

// Roster grids are comma-separated rows of 0/1/2/3, one row per nurse.
Roster read_roster(std::istream& in, const std::string& source_name);
Roster load_roster(const std::filesystem::path& path);

void write_roster(const Roster& roster, std::ostream& out);
void write_roster(const Roster& roster, const std::filesystem::path& path);

}  // namespace rostering
