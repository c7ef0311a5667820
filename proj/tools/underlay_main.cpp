#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "underlay/cli/commands.hpp"
#include "underlay/cli/config.hpp"

// underlay: outage-constrained power control and estimation-time analysis
// for a spectrum-sharing secondary link.
//
// Subcommands: tradeoff | gamma-sweep | regime | validate.
// Exit codes: 0 success, 1 usage error, 2 evaluation error,
//             3 validation failure.

namespace {

using underlay::cli::RunReport;

struct GlobalArgs {
    std::string config_path;
    std::string out_path = "-";
    std::string format = "csv";
    underlay::cli::CommonOptions common;
};

void attach_common(CLI::App* cmd, GlobalArgs& args) {
    cmd->add_option("--config", args.config_path, "Scenario config file (key = value lines)");
    cmd->add_option("--out", args.out_path, "Output path ('-' for stdout)");
    cmd->add_option("--format", args.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", args.common.seed, "Master seed for simulation streams");
    cmd->add_option("--trials", args.common.trials, "Monte Carlo trials per check")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", args.common.threads, "Worker threads")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--rho-out", args.common.rho_out_list,
                    "Outage budgets (one output series each)");
    cmd->add_option("--rho-cont-dbm", args.common.rho_cont_dbm_list,
                    "Transmit power caps in dBm");
}

void load_config(GlobalArgs& args) {
    if (!args.config_path.empty())
        args.common.base = underlay::cli::parse_config(args.config_path);
    else
        args.common.base = underlay::default_scenario();
}

void emit(const RunReport& report, const GlobalArgs& args) {
    for (const auto& warning : report.warnings)
        std::cerr << "warning: " << warning << "\n";
    const std::string text = report.render(args.format);
    if (args.out_path == "-" || args.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + args.out_path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Underlay link performance: outage-constrained power control, "
                 "estimation-throughput tradeoff and operating regime"};
    app.require_subcommand(1);

    GlobalArgs tradeoff_args, gamma_args, regime_args, validate_args;
    underlay::cli::TradeoffOptions tradeoff_opt;
    underlay::cli::GammaSweepOptions gamma_opt;
    underlay::cli::RegimeOptions regime_opt;
    underlay::cli::ValidateOptions validate_opt;

    CLI::App* tradeoff = app.add_subcommand(
        "tradeoff", "Expected throughput versus estimation time (one series per rho_out)");
    attach_common(tradeoff, tradeoff_args);
    tradeoff->add_option("--tau-start-ms", tradeoff_opt.tau_start_ms, "Sweep start [ms]");
    tradeoff->add_option("--tau-stop-ms", tradeoff_opt.tau_stop_ms, "Sweep stop [ms]");
    tradeoff->add_option("--points", tradeoff_opt.points, "Sweep points")
        ->check(CLI::Range(2, 1000000));
    tradeoff->add_flag("--log", tradeoff_opt.log_scale, "Log-spaced tau grid");

    CLI::App* gamma = app.add_subcommand(
        "gamma-sweep", "Optimized throughput versus gamma for each (rho_cont, rho_out)");
    attach_common(gamma, gamma_args);
    gamma->add_option("--gamma-start-db", gamma_opt.gamma_start_db, "Sweep start [dB]");
    gamma->add_option("--gamma-stop-db", gamma_opt.gamma_stop_db, "Sweep stop [dB]");
    gamma->add_option("--points", gamma_opt.points, "Sweep points")
        ->check(CLI::Range(2, 100000));

    CLI::App* regime = app.add_subcommand(
        "regime", "Operating regime gamma*(tau) for each (rho_cont, rho_out)");
    attach_common(regime, regime_args);
    regime->add_option("--tau-start-ms", regime_opt.tau_start_ms, "Sweep start [ms]");
    regime->add_option("--tau-stop-ms", regime_opt.tau_stop_ms, "Sweep stop [ms]");
    regime->add_option("--points", regime_opt.points, "Sweep points")
        ->check(CLI::Range(2, 100000));
    bool regime_linear = false;
    regime->add_flag("--linear", regime_linear, "Linear tau grid (default log)");

    CLI::App* validate = app.add_subcommand(
        "validate", "Monte-Carlo-versus-analytic validation suite");
    attach_common(validate, validate_args);
    validate->add_option("--tolerance-scale", validate_opt.tolerance_scale,
                         "Scale factor applied to every check tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (tradeoff->parsed()) {
            load_config(tradeoff_args);
            tradeoff_opt.common = tradeoff_args.common;
            emit(underlay::cli::cmd_tradeoff(tradeoff_opt), tradeoff_args);
        } else if (gamma->parsed()) {
            load_config(gamma_args);
            gamma_opt.common = gamma_args.common;
            emit(underlay::cli::cmd_gamma_sweep(gamma_opt), gamma_args);
        } else if (regime->parsed()) {
            load_config(regime_args);
            regime_opt.common = regime_args.common;
            regime_opt.log_scale = !regime_linear;
            emit(underlay::cli::cmd_regime(regime_opt), regime_args);
        } else if (validate->parsed()) {
            load_config(validate_args);
            validate_opt.common = validate_args.common;
            const auto outcome = underlay::cli::cmd_validate(validate_opt);
            emit(outcome.report, validate_args);
            if (!outcome.all_passed) {
                std::cerr << "validation failed\n";
                return 3;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
