#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace expsel::cli {

/// A table cell. Doubles carry their display precision; precision < 0 selects
/// the shortest representation that round-trips.
struct Cell {
    std::variant<std::monostate, std::string, double, long long> value;
    int precision = 6;

    static Cell text(std::string s) { return {std::move(s), 0}; }
    static Cell number(double v, int precision = 6) { return {v, precision}; }
    static Cell shortest(double v) { return {v, -1}; }
    static Cell integer(long long v) { return {v, 0}; }
    static Cell empty() { return {}; }
};

struct Report {
    std::string command;
    nlohmann::ordered_json meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::optional<std::string> summary;
};

/// CSV: header row, comma separator, LF line endings; a summary, when present,
/// becomes a final row whose first cell is "summary" and last cell the verdict.
/// JSON: {"meta": ..., "rows": [{column: value}], "summary": ...}.
std::string render(const Report& report, OutputFormat format);

std::string format_cell(const Cell& cell);

}  // namespace expsel::cli
