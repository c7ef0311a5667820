#include "underlay/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include "underlay/units.hpp"

namespace underlay::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& text, const std::string& key, int line) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value))
        throw ConfigError("invalid numeric value for key '" + key + "' on line " +
                          std::to_string(line), line);
    return value;
}

void range_check(bool ok, const std::string& key, const std::string& what, int line) {
    if (!ok)
        throw ConfigError("value out of range for key '" + key + "' on line " +
                          std::to_string(line) + ": " + what, line);
}

}  // namespace

ScenarioParams parse_config_stream(std::istream& in, const std::string& name) {
    ScenarioParams params = default_scenario();
    bool sigma2_set = false;

    std::string raw;
    int line = 0;
    std::map<std::string, int> seen;
    while (std::getline(in, raw)) {
        ++line;
        const std::string content = trim(raw);
        if (content.empty() || content[0] == '#') continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos)
            throw ConfigError(name + ": expected 'key = value' on line " +
                              std::to_string(line), line);
        const std::string key = trim(content.substr(0, eq));
        const std::string value = trim(content.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(name + ": empty key or value on line " + std::to_string(line),
                              line);
        if (seen.count(key))
            throw ConfigError(name + ": duplicate key '" + key + "' on line " +
                              std::to_string(line), line);
        seen[key] = line;

        if (key == "fs_hz") {
            const double v = parse_number(value, key, line);
            range_check(v >= 1.0, key, "sampling rate must be >= 1 Hz", line);
            params.fs_hz = v;
        } else if (key == "T_ms") {
            const double v = parse_number(value, key, line);
            range_check(v > 0.0, key, "frame duration must be positive", line);
            params.frame_s = v / 1e3;
        } else if (key == "sigma2_dbm") {
            params.sigma2_mw = dbm_to_mw(DbmPower{parse_number(value, key, line)});
            sigma2_set = true;
        } else if (key == "ptran_dbm") {
            params.ptran_mw = dbm_to_mw(DbmPower{parse_number(value, key, line)});
        } else if (key == "theta_I_dbm") {
            params.theta_i_mw = dbm_to_mw(DbmPower{parse_number(value, key, line)});
        } else if (key == "rho_out") {
            const double v = parse_number(value, key, line);
            range_check(v > 0.0 && v < 1.0, key, "outage budget must lie in (0, 1)", line);
            params.rho_out = v;
        } else if (key == "rho_cont_dbm") {
            params.rho_cont_mw = dbm_to_mw(DbmPower{parse_number(value, key, line)});
        } else if (key == "Ns") {
            const double v = parse_number(value, key, line);
            range_check(v >= 1.0 && v == std::floor(v), key,
                        "pilot count must be a positive integer", line);
            params.n_pilot = static_cast<std::int64_t>(v);
        } else if (key == "hp_db") {
            params.gain_p = db_to_linear(Decibel{parse_number(value, key, line)});
        } else if (key == "hs_db") {
            params.hs_amplitude =
                std::sqrt(db_to_linear(Decibel{parse_number(value, key, line)}));
        } else {
            throw ConfigError(name + ": unknown key '" + key + "' on line " +
                              std::to_string(line), line);
        }
    }

    // The SR denominator tracks the configured noise power; callers wanting
    // the interference-limited variant override the field programmatically.
    if (sigma2_set) params.snr_sr_denominator_mw = params.sigma2_mw;

    try {
        validate(params);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(name + ": " + e.what(), 0);
    }
    return params;
}

ScenarioParams parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path, 0);
    return parse_config_stream(in, path);
}

}  // namespace underlay::cli
