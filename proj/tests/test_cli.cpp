#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "underlay/cli/commands.hpp"
#include "underlay/cli/config.hpp"
#include "underlay/cli/report.hpp"
#include "underlay/power_control.hpp"
#include "underlay/throughput.hpp"
#include "underlay/units.hpp"

using namespace underlay;
using namespace underlay::cli;

namespace {

ScenarioParams parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config_stream(in, "test");
}

// Strips provenance lines ('# key=value') from a CSV body.
std::string csv_body(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, body;
    while (std::getline(in, line))
        if (line.rfind("# ", 0) != 0) body += line + "\n";
    return body;
}

std::vector<std::vector<std::string>> csv_cells(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::vector<std::vector<std::string>> out;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0 || line.empty()) continue;
        std::vector<std::string> row;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) row.push_back(cell);
        if (line.back() == ',') row.push_back("");
        out.push_back(row);
    }
    return out;
}

}  // namespace

TEST_CASE("config parsing") {
    // Empty file keeps every default.
    const ScenarioParams defaults = parse_text("");
    CHECK(defaults.fs_hz == 1e6);
    CHECK(defaults.gamma() == doctest::Approx(1.0));

    const ScenarioParams parsed = parse_text(
        "# scenario\n"
        "fs_hz = 2e6\n"
        "T_ms = 50\n"
        "sigma2_dbm = -90\n"
        "ptran_dbm = 3\n"
        "theta_I_dbm = -105\n"
        "rho_out = 0.05\n"
        "rho_cont_dbm = -10\n"
        "Ns = 16\n"
        "hp_db = -95\n"
        "hs_db = -75\n");
    CHECK(parsed.fs_hz == doctest::Approx(2e6));
    CHECK(parsed.frame_s == doctest::Approx(0.05));
    CHECK(parsed.sigma2_mw == doctest::Approx(1e-9).epsilon(1e-12));
    CHECK(parsed.snr_sr_denominator_mw == doctest::Approx(1e-9).epsilon(1e-12));
    CHECK(parsed.ptran_mw == doctest::Approx(std::pow(10.0, 0.3)).epsilon(1e-12));
    CHECK(parsed.rho_out == doctest::Approx(0.05));
    CHECK(parsed.rho_cont_mw == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(parsed.n_pilot == 16);
    CHECK(parsed.gain_p == doctest::Approx(std::pow(10.0, -9.5)).epsilon(1e-12));
    CHECK(parsed.hs_gain() == doctest::Approx(std::pow(10.0, -7.5)).epsilon(1e-12));

    // hp_db = -110 lowers gamma to -10 dB.
    const ScenarioParams low = parse_text("hp_db = -110\n");
    CHECK(low.gain_p == doctest::Approx(1e-11).epsilon(1e-12));
    CHECK(low.gamma() == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("config errors carry line numbers and key names") {
    try {
        parse_text("fs_hz = 1e6\nrho_out = 1.5\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line_number == 2);
        CHECK(std::string(e.what()).find("rho_out") != std::string::npos);
    }
    try {
        parse_text("fs_hz 1e6\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line_number == 1);
    }
    CHECK_THROWS_AS(parse_text("bogus_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("Ns = 2.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("Ns = 4\nNs = 5\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("rho_out = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("/nonexistent/scenario.cfg"), ConfigError);
}

TEST_CASE("tradeoff report structure") {
    TradeoffOptions opt;
    opt.common.base = default_scenario();
    opt.common.rho_out_list = {0.01, 0.1};
    opt.tau_start_ms = 1.0;
    opt.tau_stop_ms = 10.0;
    opt.points = 2;
    const RunReport report = cmd_tradeoff(opt);

    const auto cells = csv_cells(report.to_csv());
    REQUIRE(cells.size() == 5);  // header + 2 data + 2 footer
    CHECK(cells[0][0] == "tau_ms");
    CHECK(cells[0][1] == "rate_em_ro0.01");
    CHECK(cells[0][4] == "rate_em_ro0.1");
    CHECK(cells[0].back() == "rate_im");
    CHECK(cells[3][0] == "tau_opt_ms");
    CHECK(cells[4][0] == "rate_opt");

    // Both EM series sit below the constant IM column.
    const double im = std::stod(cells[1].back());
    CHECK(im == doctest::Approx(3.4594).epsilon(1e-4));
    for (int row : {1, 2}) {
        CHECK(std::stod(cells[row][1]) < im);
        CHECK(std::stod(cells[row][4]) < im);
    }
    // The loose budget dominates the strict one.
    CHECK(std::stod(cells[1][4]) > std::stod(cells[1][1]));

    // Emitted dBm values round-trip to the internal linear power.
    ScenarioParams strict = opt.common.base;
    strict.rho_out = 0.01;
    const double internal = controlled_power(strict, 1e-3).p_cont_mw;
    const double emitted_dbm = std::stod(cells[1][2]);
    CHECK(dbm_to_mw(DbmPower{emitted_dbm}) ==
          doctest::Approx(internal).epsilon(1e-9));
    CHECK(cells[1][3] == "outage");
}

TEST_CASE("tradeoff curve rises then falls with an interior optimum") {
    TradeoffOptions opt;
    opt.common.base = default_scenario();
    opt.tau_start_ms = 0.1;
    opt.tau_stop_ms = 10.0;
    opt.points = 30;
    opt.log_scale = true;
    const RunReport report = cmd_tradeoff(opt);

    REQUIRE(report.rows.size() == 30);
    std::vector<double> rates;
    for (const auto& row : report.rows) rates.push_back(std::get<double>(row[1]));
    const auto peak = std::max_element(rates.begin(), rates.end());
    CHECK(peak != rates.begin());
    CHECK(peak != rates.end() - 1);
    CHECK(*peak > rates.front());
    CHECK(*peak > rates.back());

    // Footer optimum dominates the sweep and sits inside it.
    const double tau_opt = std::get<double>(report.footer_rows[0][1]);
    const double rate_opt = std::get<double>(report.footer_rows[1][1]);
    CHECK(rate_opt >= *peak);
    CHECK(tau_opt > 0.1);
    CHECK(tau_opt < 10.0);
}

TEST_CASE("gamma sweep report") {
    GammaSweepOptions opt;
    opt.common.base = default_scenario();
    opt.common.rho_out_list = {0.1};
    opt.common.rho_cont_dbm_list = {0.0};
    opt.gamma_start_db = -20.0;
    opt.gamma_stop_db = 0.0;
    opt.points = 5;
    const RunReport report = cmd_gamma_sweep(opt);

    REQUIRE(report.rows.size() == 5);
    REQUIRE(report.columns.size() == 5);
    CHECK(report.columns[0] == "gamma_db");
    CHECK(report.columns[1] == "rate_opt_em_rc0_ro0.1");
    CHECK(report.columns[3] == "rate_im");
    CHECK(report.columns[4] == "gamma_star_db_rc0");

    // IM at -20 dB is log2(1 + 1000).
    CHECK(std::get<double>(report.rows[0][3]) ==
          doctest::Approx(std::log2(1001.0)).epsilon(1e-9));
    // The asymptotic boundary column is constant at -10 dB for the 0 dBm cap.
    for (const auto& row : report.rows)
        CHECK(std::get<double>(row[4]) == doctest::Approx(-10.0).epsilon(1e-9));
    // EM saturates at low gamma: the -20 and -15 dB rows agree within 1%.
    const double em_m20 = std::get<double>(report.rows[0][1]);
    const double em_m15 = std::get<double>(report.rows[1][1]);
    CHECK(em_m20 == doctest::Approx(em_m15).epsilon(0.01));
    // And the EM stays below IM everywhere.
    for (const auto& row : report.rows)
        CHECK(std::get<double>(row[1]) < std::get<double>(row[3]));
}

TEST_CASE("regime report") {
    RegimeOptions opt;
    opt.common.base = default_scenario();
    opt.common.rho_out_list = {0.1};
    opt.common.rho_cont_dbm_list = {0.0, -10.0};
    opt.tau_start_ms = 1.0;
    opt.tau_stop_ms = 99.0;
    opt.points = 8;
    const RunReport report = cmd_regime(opt);

    REQUIRE(report.rows.size() == 8);
    REQUIRE(report.columns.size() == 3);
    CHECK(report.warnings.empty());

    // gamma*(tau) nondecreasing for both caps; the curves sit ~10 dB apart
    // at the largest tau.
    for (std::size_t col : {1u, 2u}) {
        double prev = -1e9;
        for (const auto& row : report.rows) {
            const double star = std::get<double>(row[col]);
            CHECK(star >= prev - 1e-9);
            prev = star;
        }
    }
    const auto& last = report.rows.back();
    const double separation = std::get<double>(last[2]) - std::get<double>(last[1]);
    CHECK(separation == doctest::Approx(10.0).epsilon(0.05));

    // A sub-threshold window has no root: empty cell plus a warning.
    RegimeOptions degenerate = opt;
    degenerate.common.rho_cont_dbm_list = {0.0};
    degenerate.tau_start_ms = 0.05;
    degenerate.tau_stop_ms = 0.1;
    degenerate.points = 2;
    const RunReport empty_report = cmd_regime(degenerate);
    CHECK(!empty_report.warnings.empty());
    CHECK(std::holds_alternative<std::monostate>(empty_report.rows[0][1]));
    const auto cells = csv_cells(empty_report.to_csv());
    CHECK(cells[1][1] == "");
}

TEST_CASE("validate suite passes at the defaults and honors the tolerance knob") {
    ValidateOptions opt;
    opt.common.base = default_scenario();
    opt.common.seed = 42;
    opt.common.trials = 50000;
    opt.common.threads = 2;

    const ValidateOutcome outcome = cmd_validate(opt);
    CHECK(outcome.all_passed);
    REQUIRE(outcome.report.rows.size() >= 6);
    for (const auto& row : outcome.report.rows) {
        CHECK(std::get<std::string>(row[3]) == "pass");
        CHECK(std::get<double>(row[1]) <= std::get<double>(row[2]));
    }

    // Zeroed tolerances must fail every check.
    ValidateOptions broken = opt;
    broken.common.trials = 2000;
    broken.tolerance_scale = 0.0;
    const ValidateOutcome failed = cmd_validate(broken);
    CHECK(!failed.all_passed);
    for (const auto& row : failed.report.rows)
        CHECK(std::get<std::string>(row[3]) == "FAIL");
}

TEST_CASE("validate output is deterministic across worker counts") {
    ValidateOptions opt;
    opt.common.base = default_scenario();
    opt.common.seed = 7;
    opt.common.trials = 20000;

    opt.common.threads = 1;
    const std::string one = csv_body(cmd_validate(opt).report.to_csv());
    opt.common.threads = 4;
    const std::string four = csv_body(cmd_validate(opt).report.to_csv());
    CHECK(one == four);

    opt.common.threads = 1;
    const std::string again = csv_body(cmd_validate(opt).report.to_csv());
    CHECK(one == again);
}

TEST_CASE("json rendering mirrors the csv rows") {
    TradeoffOptions opt;
    opt.common.base = default_scenario();
    opt.tau_start_ms = 1.0;
    opt.tau_stop_ms = 5.0;
    opt.points = 3;
    const RunReport report = cmd_tradeoff(opt);

    const auto j = nlohmann::json::parse(report.to_json_text());
    CHECK(j["rows"].size() == 3);
    CHECK(j["footers"].size() == 2);
    CHECK(j["provenance"].contains("seed"));
    CHECK(j["provenance"].contains("timestamp"));
    CHECK(j["rows"][0]["tau_ms"].get<double>() == doctest::Approx(1.0));
    const double rate_json = j["rows"][0]["rate_em_ro0.1"].get<double>();
    CHECK(rate_json == doctest::Approx(std::get<double>(report.rows[0][1])).epsilon(1e-12));

    CHECK_THROWS_AS(report.render("xml"), std::invalid_argument);
}

TEST_CASE("csv numbers are locale-free and round-trip exactly") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-10.0) == "-10");
    CHECK(format_number(2e-10) == "2e-10");
    for (double v : {3.14159, -0.125, 1e-300, 6.02e23, 0.30000000000000004}) {
        const double back = std::strtod(format_number(v).c_str(), nullptr);
        CHECK(back == v);
    }
}

#ifdef UNDERLAY_CLI_BIN
TEST_CASE("tool exit codes") {
    const std::string bin = UNDERLAY_CLI_BIN;
    const auto run = [&](const std::string& args) {
        const std::string cmd = bin + " " + args + " >/dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    };
    CHECK(run("--help") == 0);
    CHECK(run("tradeoff --tau-start-ms 1 --tau-stop-ms 5 --points 2") == 0);
    CHECK(run("bogus-subcommand") == 1);
    CHECK(run("tradeoff --points 1") == 1);
    // Sweep outside [2/f_s, T) is an evaluation error.
    CHECK(run("tradeoff --tau-start-ms 50 --tau-stop-ms 200 --points 2") == 2);
    // Zero tolerances force a validation failure.
    CHECK(run("validate --trials 2000 --tolerance-scale 0") == 3);
}
#endif
