#include "underlay/cli/report.hpp"

#include <charconv>
#include <stdexcept>

#include <json.hpp>

namespace underlay::cli {

std::string format_number(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_number failed");
    return std::string(buf, ptr);
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string cell_to_csv(const Cell& cell) {
    if (std::holds_alternative<std::monostate>(cell)) return "";
    if (const double* num = std::get_if<double>(&cell)) return format_number(*num);
    return csv_escape(std::get<std::string>(cell));
}

void append_row(std::string& out, const std::vector<Cell>& row, std::size_t width) {
    for (std::size_t c = 0; c < width; ++c) {
        if (c) out += ',';
        if (c < row.size()) out += cell_to_csv(row[c]);
    }
    out += '\n';
}

nlohmann::json cell_to_json(const Cell& cell) {
    if (std::holds_alternative<std::monostate>(cell)) return nullptr;
    if (const double* num = std::get_if<double>(&cell)) return *num;
    return std::get<std::string>(cell);
}

}  // namespace

std::string RunReport::to_csv() const {
    std::string out;
    for (const auto& [key, value] : provenance)
        out += "# " + key + "=" + value + "\n";
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out += ',';
        out += csv_escape(columns[c]);
    }
    out += '\n';
    for (const auto& row : rows) append_row(out, row, columns.size());
    for (const auto& row : footer_rows) append_row(out, row, columns.size());
    return out;
}

std::string RunReport::to_json_text() const {
    nlohmann::json j;
    j["provenance"] = nlohmann::json::object();
    for (const auto& [key, value] : provenance) j["provenance"][key] = value;
    j["columns"] = columns;
    auto rows_to_json = [&](const std::vector<std::vector<Cell>>& src) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& row : src) {
            nlohmann::json obj = nlohmann::json::object();
            for (std::size_t c = 0; c < columns.size() && c < row.size(); ++c)
                obj[columns[c]] = cell_to_json(row[c]);
            arr.push_back(obj);
        }
        return arr;
    };
    j["rows"] = rows_to_json(rows);
    j["footers"] = rows_to_json(footer_rows);
    if (!warnings.empty()) j["warnings"] = warnings;
    return j.dump(2) + "\n";
}

std::string RunReport::render(const std::string& format) const {
    if (format == "csv") return to_csv();
    if (format == "json") return to_json_text();
    throw std::invalid_argument("unknown report format: " + format);
}

}  // namespace underlay::cli
