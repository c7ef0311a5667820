// Acceptance suite: every release criterion evaluated end to end at its
// stated tolerance, one PASS/FAIL line each. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "underlay/cli/commands.hpp"
#include "underlay/distributions.hpp"
#include "underlay/montecarlo.hpp"
#include "underlay/numerics.hpp"
#include "underlay/power_control.hpp"
#include "underlay/throughput.hpp"
#include "underlay/tradeoff.hpp"
#include "underlay/units.hpp"

using namespace underlay;

namespace {

struct Checker {
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void close(double got, double want, double tol, const std::string& what) {
        if (!(std::fabs(got - want) <= tol))
            failures.push_back(what + ": got " + std::to_string(got) + ", want " +
                               std::to_string(want) + " +- " + std::to_string(tol));
    }
    void below(double got, double limit, const std::string& what) {
        if (!(got < limit))
            failures.push_back(what + ": got " + std::to_string(got) + ", limit " +
                               std::to_string(limit));
    }
};

// A1: ideal benchmark values and runtime.
void criterion_a1(Checker& c) {
    const ScenarioParams p = default_scenario();
    const auto start = std::chrono::steady_clock::now();
    const double power = ideal_controlled_power(p);
    const double rate = ideal_throughput(p);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    c.close(mw_to_dbm(power).value, -10.0, 1e-6, "ideal power dBm");
    c.close(rate, std::log2(11.0), 1e-6, "ideal throughput vs log2(11)");
    c.close(rate, 3.4594, 1e-4, "ideal throughput value");
    c.close(rate, 3.4, 0.1, "ideal throughput vs figure level");
    c.below(ms, 1.0, "A1 runtime ms");
}

// A2: received-power estimator CDF against 1e5 signal-level simulations.
void criterion_a2(Checker& c) {
    const ScenarioParams p = default_scenario();
    const GammaDist dist = received_power_estimate_dist(p, 1e-3);
    c.close(dist.shape, 666.667, 0.001, "shape a1");
    c.close(dist.scale, 3e-13, 1e-18, "scale b1 mW");

    mc::SimConfig cfg;
    cfg.n_trials = 100000;
    cfg.master_seed = 42;
    cfg.threads = 2;
    cfg.path = mc::SamplingPath::PerSample;
    const auto start = std::chrono::steady_clock::now();
    const mc::SimSummary sim = mc::simulate_received_power(p, 1e-3, cfg);
    const double ks = mc::ks_distance(sim, [&](double x) {
        return num::reg_lower_gamma(dist.shape, x / dist.scale);
    });
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.below(ks, 0.01, "KS(P_hat samples, Gamma CDF)");
    c.below(secs, 5.0, "A2 runtime s");
}

// A3: access-gain estimator CDF; the unscaled variant must fail hard.
void criterion_a3(Checker& c) {
    const ScenarioParams p = default_scenario();
    mc::SimConfig cfg;
    cfg.n_trials = 100000;
    cfg.master_seed = 42;
    cfg.threads = 2;
    const auto start = std::chrono::steady_clock::now();
    const mc::SimSummary sim = mc::simulate_access_estimate(p, cfg);

    const GammaDist with_scale = access_gain_estimate_dist(p);
    const double ks = mc::ks_distance(
        sim, [&](double x) { return gamma_cdf(with_scale, x); });
    c.below(ks, 0.01, "KS(|hs_hat|^2 samples, scaled Gamma)");

    // Variant without the 1/(2 N_s) unit scale.
    GammaDist unscaled = with_scale;
    unscaled.scale *= 2.0 * static_cast<double>(p.n_pilot);
    const double ks_bad = mc::ks_distance(
        sim, [&](double x) { return gamma_cdf(unscaled, x); });
    c.require(ks_bad >= 0.1, "unscaled variant must fail the KS check by >= 10x (got " +
                                 std::to_string(ks_bad) + ")");
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.below(secs, 5.0, "A3 runtime s");
}

// A4: outage calibration across budgets and estimation times.
void criterion_a4(Checker& c) {
    const ScenarioParams base = default_scenario();
    const auto start = std::chrono::steady_clock::now();
    std::uint64_t stream = 0;
    for (double ro : {0.01, 0.1}) {
        for (double tau_ms : {1.0, 5.0, 10.0}) {
            ScenarioParams p = base;
            p.rho_out = ro;
            const PowerDecision d = controlled_power(p, tau_ms * 1e-3);
            mc::SimConfig cfg;
            cfg.n_trials = 1000000;
            cfg.master_seed = 42;
            cfg.stream_id = stream++;
            cfg.threads = 2;
            cfg.keep_samples = false;
            const double emp = mc::empirical_outage(p, tau_ms * 1e-3, d.p_cont_mw, cfg);
            const double band = std::max(
                3.0 * std::sqrt(ro * (1.0 - ro) / 1e6), 0.1 * ro);
            c.close(emp, ro,
                    band, "empirical outage at rho_out=" + std::to_string(ro) +
                              " tau_ms=" + std::to_string(tau_ms));
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.below(secs, 30.0, "A4 runtime s");
}

// A5: tradeoff curve shape, ordering, band, and quadrature-vs-MC agreement.
void criterion_a5(Checker& c) {
    const ScenarioParams base = default_scenario();
    const auto start = std::chrono::steady_clock::now();

    std::vector<double> taus;
    for (int i = 0; i < 40; ++i)
        taus.push_back(0.1e-3 * std::pow(100.0, i / 39.0));  // 0.1 .. 10 ms log grid

    ScenarioParams loose = base;
    loose.rho_out = 0.1;
    ScenarioParams strict = base;
    strict.rho_out = 0.01;
    const auto curve_loose = tradeoff_curve(loose, taus);
    const auto curve_strict = tradeoff_curve(strict, taus);
    const double im = ideal_throughput(base);

    std::size_t best = 0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (curve_loose[i].rate_bits > curve_loose[best].rate_bits) best = i;
        c.require(curve_loose[i].rate_bits > curve_strict[i].rate_bits,
                  "rho_out=0.1 dominates rho_out=0.01 at tau index " + std::to_string(i));
        c.require(curve_loose[i].rate_bits < im && curve_strict[i].rate_bits < im,
                  "EM below IM at tau index " + std::to_string(i));
        for (double rate : {curve_loose[i].rate_bits, curve_strict[i].rate_bits})
            c.require(rate > 2.4 && rate < 3.5,
                      "EM rate inside [2.4, 3.5] at tau index " + std::to_string(i) +
                          " (got " + std::to_string(rate) + ")");
    }
    c.require(best != 0 && best != taus.size() - 1, "interior maximum of R_s(tau)");

    // Quadrature vs Monte Carlo at five grid points.
    std::uint64_t stream = 100;
    for (std::size_t i : {0ul, 9ul, 19ul, 29ul, 39ul}) {
        mc::SimConfig cfg;
        cfg.n_trials = 1000000;
        cfg.master_seed = 42;
        cfg.stream_id = stream++;
        cfg.threads = 2;
        cfg.keep_samples = false;
        const double sim = mc::empirical_throughput(loose, taus[i], cfg);
        const double analytic = curve_loose[i].rate_bits;
        c.below(std::fabs(sim - analytic) / analytic, 0.01,
                "quadrature vs MC relative gap at tau index " + std::to_string(i));
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.below(secs, 60.0, "A5 runtime s");
}

// A6: operating regime monotonicity, large-tau asymptotes, curve separation.
void criterion_a6(Checker& c) {
    const auto start = std::chrono::steady_clock::now();
    ScenarioParams p = default_scenario();
    p.frame_s = 10.0;  // allows tau f_s = 1e6 inside the frame

    std::vector<double> taus;
    for (int i = 0; i < 10; ++i) taus.push_back(1e-3 * std::pow(1000.0, i / 9.0));

    for (double cap_dbm : {0.0, -10.0}) {
        ScenarioParams q = p;
        q.rho_cont_mw = dbm_to_mw(DbmPower{cap_dbm});
        double prev = 0.0;
        for (double tau : taus) {
            const double star = operating_regime_gamma(q, tau).gamma_star;
            c.require(star >= prev - 1e-12,
                      "gamma*(tau) nondecreasing at cap " + std::to_string(cap_dbm) +
                          " dBm, tau " + std::to_string(tau));
            prev = star;
        }
    }

    ScenarioParams cap0 = p;
    const double star0_db = linear_to_db(operating_regime_gamma(cap0, 1.0).gamma_star).value;
    c.close(star0_db, -10.0, 0.5, "large-tau gamma* at rho_cont=0 dBm");
    ScenarioParams cap10 = p;
    cap10.rho_cont_mw = 0.1;
    const double star10_db =
        linear_to_db(operating_regime_gamma(cap10, 1.0).gamma_star).value;
    c.close(star10_db, 0.0, 0.5, "large-tau gamma* at rho_cont=-10 dBm");
    c.close(star10_db - star0_db, 10.0, 0.5, "separation of the two cap curves");

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.below(secs, 10.0, "A6 runtime s");
}

// A7: saturation of the optimized throughput versus gamma.
void criterion_a7(Checker& c) {
    const ScenarioParams base = default_scenario();
    const auto start = std::chrono::steady_clock::now();

    // Figure-axis grid, 5 dB ticks over [-20, 10] dB.
    const std::vector<double> gammas_db = {-20, -15, -10, -5, 0, 5, 10};
    const double star_db = -10.0;  // theta_I P_tran / (rho_cont sigma^2), 0 dBm cap

    std::vector<double> rates;
    for (double g_db : gammas_db) {
        ScenarioParams p = base;
        p.gain_p = std::pow(10.0, g_db / 10.0) * p.sigma2_mw / p.ptran_mw;
        rates.push_back(optimize_estimation_time(p).rate_opt_bits);
    }

    double plateau_min = 1e300, plateau_max = -1e300;
    for (std::size_t i = 0; i < gammas_db.size(); ++i) {
        if (gammas_db[i] <= star_db - 1.0) {
            plateau_min = std::min(plateau_min, rates[i]);
            plateau_max = std::max(plateau_max, rates[i]);
        }
    }
    c.require(plateau_max / plateau_min - 1.0 < 0.01,
              "R_s(tau~) constant within 1% for gamma <= gamma* - 1 dB (spread " +
                  std::to_string(plateau_max / plateau_min - 1.0) + ")");
    for (std::size_t i = 1; i < gammas_db.size(); ++i) {
        if (gammas_db[i - 1] >= star_db + 1.0)
            c.require(rates[i] < rates[i - 1],
                      "strictly decreasing beyond gamma* + 1 dB at " +
                          std::to_string(gammas_db[i]) + " dB");
    }

    // rho_cont = -10 dBm: the ideal-vs-estimation gap at gamma = -20 dB.
    ScenarioParams capped = base;
    capped.rho_cont_mw = 0.1;
    capped.gain_p = std::pow(10.0, -20.0 / 10.0) * capped.sigma2_mw / capped.ptran_mw;
    const double im = ideal_throughput(capped);
    const double em = optimize_estimation_time(capped).rate_opt_bits;
    c.close(im, 9.967, 0.01, "IM level at gamma = -20 dB");
    c.require(im - em > 6.0, "IM-vs-EM gap at gamma=-20 dB exceeds 6 bits/s/Hz (got " +
                                 std::to_string(im - em) + ")");

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.below(secs, 60.0, "A7 runtime s");
}

// A8: byte-identical validate output across runs and worker counts.
void criterion_a8(Checker& c) {
    cli::ValidateOptions opt;
    opt.common.base = default_scenario();
    opt.common.seed = 42;
    opt.common.trials = 20000;

    const auto body = [](const cli::RunReport& report) {
        std::string out;
        for (const auto& line : {report.to_csv()}) {
            std::size_t pos = 0;
            while (pos < line.size()) {
                const std::size_t end = line.find('\n', pos);
                const std::string row = line.substr(pos, end - pos);
                if (row.rfind("# timestamp=", 0) != 0) out += row + "\n";
                pos = end == std::string::npos ? line.size() : end + 1;
            }
        }
        return out;
    };

    opt.common.threads = 1;
    const std::string first = body(cmd_validate(opt).report);
    const std::string second = body(cmd_validate(opt).report);
    opt.common.threads = 4;
    const std::string threaded = body(cmd_validate(opt).report);

    c.require(first == second, "repeated runs byte-identical");
    c.require(first == threaded, "worker counts byte-identical");
    c.require(first.find("seed=42") != std::string::npos, "report embeds the seed");
}

struct Criterion {
    const char* name;
    const char* title;
    std::function<void(Checker&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"A1", "ideal benchmark", criterion_a1},
        {"A2", "received-power CDF validation", criterion_a2},
        {"A3", "access-gain CDF validation", criterion_a3},
        {"A4", "outage calibration", criterion_a4},
        {"A5", "estimation-throughput tradeoff", criterion_a5},
        {"A6", "operating regime", criterion_a6},
        {"A7", "saturation versus gamma", criterion_a7},
        {"A8", "determinism", criterion_a8},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        Checker checker;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(checker);
        } catch (const std::exception& e) {
            checker.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (checker.failures.empty()) {
            std::printf("%s PASS  %-36s (%.2f s)\n", criterion.name, criterion.title, secs);
        } else {
            ++failed;
            std::printf("%s FAIL  %-36s (%.2f s)\n", criterion.name, criterion.title, secs);
            for (const auto& failure : checker.failures)
                std::printf("    - %s\n", failure.c_str());
        }
    }
    return failed;
}
