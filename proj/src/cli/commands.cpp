#include "underlay/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <stdexcept>

#include "underlay/distributions.hpp"
#include "underlay/montecarlo.hpp"
#include "underlay/numerics.hpp"
#include "underlay/parallel.hpp"
#include "underlay/power_control.hpp"
#include "underlay/throughput.hpp"
#include "underlay/tradeoff.hpp"
#include "underlay/units.hpp"

namespace underlay::cli {

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string iso8601_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void add_provenance(RunReport& report, const CommonOptions& common) {
    const ScenarioParams& p = common.base;
    report.provenance = {
        {"tool", std::string("underlay ") + kToolVersion},
        {"timestamp", iso8601_now()},
        {"seed", std::to_string(common.seed)},
        {"trials", std::to_string(common.trials)},
        {"fs_hz", format_number(p.fs_hz)},
        {"T_ms", format_number(p.frame_s * 1e3)},
        {"sigma2_dbm", format_number(mw_to_dbm(p.sigma2_mw).value)},
        {"ptran_dbm", format_number(mw_to_dbm(p.ptran_mw).value)},
        {"theta_I_dbm", format_number(mw_to_dbm(p.theta_i_mw).value)},
        {"rho_out", format_number(p.rho_out)},
        {"rho_cont_dbm", format_number(mw_to_dbm(p.rho_cont_mw).value)},
        {"Ns", format_number(static_cast<double>(p.n_pilot))},
        {"hp_db", format_number(linear_to_db(p.gain_p).value)},
        {"hs_db", format_number(linear_to_db(p.hs_gain()).value)},
    };
}

std::vector<double> make_grid(double start, double stop, int points, bool log_scale) {
    if (points < 2) throw std::invalid_argument("sweep needs at least 2 points");
    if (!(start < stop)) throw std::invalid_argument("sweep start must be below stop");
    std::vector<double> grid(points);
    if (log_scale) {
        if (!(start > 0.0)) throw std::invalid_argument("log sweep needs positive start");
        const double llo = std::log(start);
        const double lhi = std::log(stop);
        for (int i = 0; i < points; ++i)
            grid[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / (points - 1));
    } else {
        for (int i = 0; i < points; ++i)
            grid[i] = start + (stop - start) * static_cast<double>(i) / (points - 1);
    }
    grid.front() = start;
    grid.back() = stop;
    return grid;
}

std::string binding_text(Binding b) {
    return b == Binding::OutageRule ? "outage" : "cap";
}

// Evaluates one closure per point on the worker pool, capturing the first
// exception (points stay in input order).
void run_points(int points, int threads, const std::function<void(int)>& eval) {
    std::vector<std::exception_ptr> errors(points);
    parallel_for_blocks(points, threads, [&](std::int64_t i) {
        try {
            eval(static_cast<int>(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
}

ScenarioParams with_gamma_db(const ScenarioParams& base, double gamma_db) {
    ScenarioParams p = base;
    p.gain_p = std::pow(10.0, gamma_db / 10.0) * p.sigma2_mw / p.ptran_mw;
    return p;
}

// Long-estimation cap-binding boundary theta_I P_tran / (rho_cont sigma^2):
// the level the regime curve approaches as the estimate concentrates.
double asymptotic_gamma_star(const ScenarioParams& p, double rho_cont_mw) {
    return p.theta_i_mw * p.ptran_mw / (rho_cont_mw * p.sigma2_mw);
}

}  // namespace

std::vector<double> CommonOptions::rho_outs() const {
    if (rho_out_list.empty()) return {base.rho_out};
    for (double r : rho_out_list)
        if (!(r > 0.0 && r < 1.0))
            throw std::invalid_argument("rho_out values must lie in (0, 1)");
    return rho_out_list;
}

std::vector<double> CommonOptions::rho_cont_mws() const {
    if (rho_cont_dbm_list.empty()) return {base.rho_cont_mw};
    std::vector<double> out;
    out.reserve(rho_cont_dbm_list.size());
    for (double dbm : rho_cont_dbm_list) out.push_back(dbm_to_mw(DbmPower{dbm}));
    return out;
}

RunReport cmd_tradeoff(const TradeoffOptions& opt) {
    const std::vector<double> rho_outs = opt.common.rho_outs();
    const std::vector<double> caps = opt.common.rho_cont_mws();
    if (caps.size() != 1)
        throw std::invalid_argument("cmd_tradeoff: exactly one rho_cont value");

    ScenarioParams base = opt.common.base;
    base.rho_cont_mw = caps[0];
    validate(base);

    const std::vector<double> taus =
        make_grid(opt.tau_start_ms / 1e3, opt.tau_stop_ms / 1e3, opt.points, opt.log_scale);
    for (double tau : taus)
        if (tau < 2.0 / base.fs_hz || tau >= base.frame_s)
            throw std::invalid_argument("cmd_tradeoff: tau sweep must lie in [2/f_s, T)");

    RunReport report;
    add_provenance(report, opt.common);

    report.columns = {"tau_ms"};
    std::vector<std::size_t> rate_col(rho_outs.size());
    for (std::size_t r = 0; r < rho_outs.size(); ++r) {
        const std::string suffix = "_ro" + format_number(rho_outs[r]);
        rate_col[r] = report.columns.size();
        report.columns.push_back("rate_em" + suffix);
        report.columns.push_back("p_cont_dbm" + suffix);
        report.columns.push_back("binding" + suffix);
    }
    const std::size_t im_col = report.columns.size();
    report.columns.push_back("rate_im");

    const double rate_im = ideal_throughput(base);
    report.rows.assign(taus.size(), std::vector<Cell>(report.columns.size()));
    for (std::size_t i = 0; i < taus.size(); ++i) {
        report.rows[i][0] = taus[i] * 1e3;
        report.rows[i][im_col] = rate_im;
    }

    std::vector<Cell> tau_opt_row(report.columns.size());
    std::vector<Cell> rate_opt_row(report.columns.size());
    tau_opt_row[0] = std::string("tau_opt_ms");
    rate_opt_row[0] = std::string("rate_opt");

    for (std::size_t r = 0; r < rho_outs.size(); ++r) {
        ScenarioParams params = base;
        params.rho_out = rho_outs[r];
        run_points(static_cast<int>(taus.size()), opt.common.threads, [&](int i) {
            const ThroughputPoint point = expected_throughput(params, taus[i]);
            report.rows[i][rate_col[r]] = point.rate_bits;
            report.rows[i][rate_col[r] + 1] = mw_to_dbm(point.p_cont_mw).value;
            report.rows[i][rate_col[r] + 2] = binding_text(point.binding);
        });
        const TradeoffResult opt_result =
            optimize_estimation_time(params, taus.front(), taus.back());
        tau_opt_row[rate_col[r]] = opt_result.tau_opt_s * 1e3;
        rate_opt_row[rate_col[r]] = opt_result.rate_opt_bits;
    }
    report.footer_rows.push_back(std::move(tau_opt_row));
    report.footer_rows.push_back(std::move(rate_opt_row));
    return report;
}

RunReport cmd_gamma_sweep(const GammaSweepOptions& opt) {
    const std::vector<double> rho_outs = opt.common.rho_outs();
    const std::vector<double> caps = opt.common.rho_cont_mws();
    const ScenarioParams& base = opt.common.base;
    validate(base);

    const std::vector<double> gammas_db =
        make_grid(opt.gamma_start_db, opt.gamma_stop_db, opt.points, false);

    RunReport report;
    add_provenance(report, opt.common);
    report.columns = {"gamma_db"};
    struct Combo {
        double cap_mw, rho_out;
        std::size_t col;
    };
    std::vector<Combo> combos;
    for (double cap : caps) {
        for (double ro : rho_outs) {
            const std::string suffix =
                "_rc" + format_number(mw_to_dbm(cap).value) + "_ro" + format_number(ro);
            combos.push_back({cap, ro, report.columns.size()});
            report.columns.push_back("rate_opt_em" + suffix);
            report.columns.push_back("tau_opt_ms" + suffix);
        }
    }
    const std::size_t im_col = report.columns.size();
    report.columns.push_back("rate_im");
    std::vector<std::size_t> star_col(caps.size());
    for (std::size_t c = 0; c < caps.size(); ++c) {
        star_col[c] = report.columns.size();
        report.columns.push_back("gamma_star_db_rc" + format_number(mw_to_dbm(caps[c]).value));
    }

    report.rows.assign(gammas_db.size(), std::vector<Cell>(report.columns.size()));
    run_points(static_cast<int>(gammas_db.size()), opt.common.threads, [&](int i) {
        const double g_db = gammas_db[i];
        auto& row = report.rows[i];
        row[0] = g_db;
        row[im_col] = ideal_throughput(with_gamma_db(base, g_db));
        for (const Combo& combo : combos) {
            ScenarioParams params = with_gamma_db(base, g_db);
            params.rho_cont_mw = combo.cap_mw;
            params.rho_out = combo.rho_out;
            const TradeoffResult result = optimize_estimation_time(params);
            row[combo.col] = result.rate_opt_bits;
            row[combo.col + 1] = result.tau_opt_s * 1e3;
        }
        for (std::size_t c = 0; c < caps.size(); ++c)
            row[star_col[c]] =
                linear_to_db(asymptotic_gamma_star(base, caps[c])).value;
    });
    return report;
}

RunReport cmd_regime(const RegimeOptions& opt) {
    const std::vector<double> rho_outs = opt.common.rho_outs();
    const std::vector<double> caps = opt.common.rho_cont_mws();
    const ScenarioParams& base = opt.common.base;
    validate(base);

    const std::vector<double> taus =
        make_grid(opt.tau_start_ms / 1e3, opt.tau_stop_ms / 1e3, opt.points, opt.log_scale);

    RunReport report;
    add_provenance(report, opt.common);
    report.columns = {"tau_ms"};
    struct Combo {
        double cap_mw, rho_out;
        std::size_t col;
    };
    std::vector<Combo> combos;
    for (double cap : caps) {
        for (double ro : rho_outs) {
            combos.push_back({cap, ro, report.columns.size()});
            report.columns.push_back("gamma_star_db_rc" + format_number(mw_to_dbm(cap).value) +
                                     "_ro" + format_number(ro));
        }
    }

    report.rows.assign(taus.size(), std::vector<Cell>(report.columns.size()));
    std::vector<std::vector<std::string>> point_warnings(taus.size());
    run_points(static_cast<int>(taus.size()), opt.common.threads, [&](int i) {
        auto& row = report.rows[i];
        row[0] = taus[i] * 1e3;
        for (const Combo& combo : combos) {
            ScenarioParams params = base;
            params.rho_cont_mw = combo.cap_mw;
            params.rho_out = combo.rho_out;
            try {
                const OperatingRegime regime = operating_regime_gamma(params, taus[i]);
                row[combo.col] = linear_to_db(regime.gamma_star).value;
            } catch (const num::NoSignChangeError& e) {
                row[combo.col] = std::monostate{};
                point_warnings[i].push_back(
                    "no operating-regime root at tau_ms=" + format_number(taus[i] * 1e3) +
                    " rho_cont_dbm=" + format_number(mw_to_dbm(combo.cap_mw).value) +
                    " rho_out=" + format_number(combo.rho_out) +
                    " (endpoint residuals " + format_number(e.f_lo) + ", " +
                    format_number(e.f_hi) + ")");
            }
        }
    });
    for (auto& w : point_warnings)
        report.warnings.insert(report.warnings.end(), w.begin(), w.end());
    return report;
}

ValidateOutcome cmd_validate(const ValidateOptions& opt) {
    const ScenarioParams base = opt.common.base;
    validate(base);
    if (!(opt.tolerance_scale >= 0.0))
        throw std::invalid_argument("cmd_validate: tolerance scale must be nonnegative");

    RunReport report;
    add_provenance(report, opt.common);
    report.columns = {"check", "measured", "tolerance", "status"};

    bool all_passed = true;
    const auto add_check = [&](const std::string& name, double measured, double tolerance) {
        const bool pass = measured <= tolerance;
        all_passed = all_passed && pass;
        report.rows.push_back({name, measured, tolerance,
                               std::string(pass ? "pass" : "FAIL")});
    };

    const double tau = 1e-3;
    mc::SimConfig cfg;
    cfg.n_trials = opt.common.trials;
    cfg.master_seed = opt.common.seed;
    cfg.threads = opt.common.threads;

    // Estimator CDF checks (KS against the closed-form approximations).
    {
        mc::SimConfig c = cfg;
        c.stream_id = 1;
        const mc::SimSummary sim = mc::simulate_received_power(base, tau, c);
        const GammaDist dist = received_power_estimate_dist(base, tau);
        const double ks =
            mc::ks_distance(sim, [&](double x) { return gamma_cdf(dist, x); });
        add_check("received_power_cdf_ks", ks, 0.01 * opt.tolerance_scale);

        const double mean_ref = dist.mean();
        const double se = std::sqrt(dist.variance() / static_cast<double>(c.n_trials));
        add_check("received_power_mean_abs_err", std::fabs(sim.mean - mean_ref),
                  4.0 * se * opt.tolerance_scale);
    }
    {
        mc::SimConfig c = cfg;
        c.stream_id = 2;
        const mc::SimSummary sim = mc::simulate_access_estimate(base, c);
        const GammaDist dist = access_gain_estimate_dist(base);
        const double ks =
            mc::ks_distance(sim, [&](double x) { return gamma_cdf(dist, x); });
        add_check("access_gain_cdf_ks", ks, 0.01 * opt.tolerance_scale);

        const double mean_ref = dist.mean();
        const double se = std::sqrt(dist.variance() / static_cast<double>(c.n_trials));
        add_check("access_gain_mean_abs_err", std::fabs(sim.mean - mean_ref),
                  4.0 * se * opt.tolerance_scale);
    }

    // Outage calibration.
    std::vector<double> rho_outs = opt.common.rho_out_list;
    if (rho_outs.empty()) rho_outs = {0.01, 0.1};
    std::uint64_t stream = 3;
    for (double ro : rho_outs) {
        ScenarioParams params = base;
        params.rho_out = ro;
        mc::SimConfig c = cfg;
        c.stream_id = stream++;
        c.keep_samples = false;
        const PowerDecision decision = controlled_power(params, tau);
        const double emp = mc::empirical_outage(params, tau, decision.p_cont_mw, c);
        const double band =
            std::max(3.0 * std::sqrt(ro * (1.0 - ro) / static_cast<double>(c.n_trials)),
                     0.1 * ro);
        add_check("outage_calibration_ro" + format_number(ro), std::fabs(emp - ro),
                  band * opt.tolerance_scale);
    }

    // Throughput cross-check: quadrature vs Monte Carlo.
    {
        mc::SimConfig c = cfg;
        c.stream_id = 99;
        c.keep_samples = false;
        const double analytic = expected_throughput(base, tau).rate_bits;
        const double simulated = mc::empirical_throughput(base, tau, c);
        add_check("throughput_rel_err", std::fabs(simulated - analytic) / analytic,
                  0.01 * opt.tolerance_scale);
    }

    return ValidateOutcome{std::move(report), all_passed};
}

}  // namespace underlay::cli
