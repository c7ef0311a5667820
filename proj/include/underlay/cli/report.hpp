#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

// Tabular run report with CSV and JSON renderings. CSV is RFC-4180-style
// (header row, '.' decimal separator, locale-free shortest-round-trip
// numbers) preceded by '# key=value' provenance lines. JSON mirrors the
// same rows as keyed objects.

namespace underlay::cli {

using Cell = std::variant<std::monostate, double, std::string>;

struct RunReport {
    std::vector<std::pair<std::string, std::string>> provenance;  // ordered
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    // Footer rows carry a label in the first column.
    std::vector<std::vector<Cell>> footer_rows;
    std::vector<std::string> warnings;

    std::string to_csv() const;
    std::string to_json_text() const;
    std::string render(const std::string& format) const;  // "csv" or "json"
};

// Locale-independent shortest round-trip formatting.
std::string format_number(double v);

}  // namespace underlay::cli
