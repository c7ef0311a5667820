#pragma once

#include <cstdint>
#include <vector>

#include "underlay/cli/report.hpp"
#include "underlay/scenario.hpp"

// Experiment drivers behind the CLI subcommands. Each returns a RunReport;
// rendering and exit-code policy live in the tool's main.

namespace underlay::cli {

struct CommonOptions {
    ScenarioParams base;                    // from config (or defaults)
    std::vector<double> rho_out_list;       // empty: use base.rho_out
    std::vector<double> rho_cont_dbm_list;  // empty: use base.rho_cont_mw
    std::uint64_t seed = 42;
    std::int64_t trials = 100000;
    int threads = 1;

    std::vector<double> rho_outs() const;
    std::vector<double> rho_cont_mws() const;
};

struct TradeoffOptions {
    CommonOptions common;
    double tau_start_ms = 0.1;
    double tau_stop_ms = 10.0;
    int points = 100;
    bool log_scale = false;
};

struct GammaSweepOptions {
    CommonOptions common;
    double gamma_start_db = -20.0;
    double gamma_stop_db = 10.0;
    int points = 31;
};

struct RegimeOptions {
    CommonOptions common;
    double tau_start_ms = 1.0;
    double tau_stop_ms = 99.0;
    int points = 25;
    bool log_scale = true;
};

struct ValidateOptions {
    CommonOptions common;
    // Scales every check tolerance; 0 forces every check to fail (used to
    // exercise the failure path).
    double tolerance_scale = 1.0;
};

struct ValidateOutcome {
    RunReport report;
    bool all_passed = false;
};

// Expected-throughput sweep over tau for each configured rho_out, with the
// ideal benchmark column and per-curve optimum footer rows.
RunReport cmd_tradeoff(const TradeoffOptions& opt);

// Optimized throughput versus gamma (varied through the interference
// channel gain) for each (rho_cont, rho_out) pair, with the ideal benchmark
// and the cap-binding boundary gamma* per rho_cont.
RunReport cmd_gamma_sweep(const GammaSweepOptions& opt);

// Operating regime gamma*(tau) for each (rho_cont, rho_out) pair; taus with
// no root are emitted as empty cells with a warning.
RunReport cmd_regime(const RegimeOptions& opt);

// Monte-Carlo-versus-analytic validation suite: estimator CDF KS checks,
// outage calibration and the throughput cross-check.
ValidateOutcome cmd_validate(const ValidateOptions& opt);

}  // namespace underlay::cli
