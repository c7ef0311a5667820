#pragma once

#include <istream>
#include <stdexcept>
#include <string>

#include "underlay/scenario.hpp"

// Line-based `key = value` scenario files. dB/dBm values are converted to
// linear units here and nowhere else. Missing keys keep their defaults.
//
// Keys: fs_hz, T_ms, sigma2_dbm, ptran_dbm, theta_I_dbm, rho_out,
//       rho_cont_dbm, Ns, hp_db (10 log10 |h_p|^2), hs_db (10 log10 |h_s|^2).
// Blank lines and lines starting with '#' are ignored.

namespace underlay::cli {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line)
        : std::runtime_error(what), line_number(line) {}
    int line_number;
};

ScenarioParams parse_config(const std::string& path);
ScenarioParams parse_config_stream(std::istream& in, const std::string& name);

}  // namespace underlay::cli
