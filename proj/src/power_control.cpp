#include "underlay/power_control.hpp"

#include <algorithm>
#include <cmath>

#include "underlay/distributions.hpp"
#include "underlay/numerics.hpp"

namespace underlay {

double ideal_controlled_power(const ScenarioParams& params, bool apply_cap) {
    validate(params);
    const double p = params.theta_i_mw / params.gain_p;
    return apply_cap ? std::min(p, params.rho_cont_mw) : p;
}

PowerDecision controlled_power(const ScenarioParams& params, double tau_s) {
    const GammaDist dist = received_power_estimate_dist(params, tau_s);
    const double q = gamma_quantile(dist, 1.0 - params.rho_out);

    PowerDecision decision;
    decision.quantile_point_mw = q;
    if (q <= params.sigma2_mw) {
        // Even the upper quantile sits at or below the noise floor: the
        // outage constraint cannot bind and the cap is the only limit.
        decision.p_cont_mw = params.rho_cont_mw;
        decision.binding = Binding::TransmitCap;
        return decision;
    }
    const double candidate = params.theta_i_mw * params.ptran_mw / (q - params.sigma2_mw);
    if (candidate < params.rho_cont_mw) {
        decision.p_cont_mw = candidate;
        decision.binding = Binding::OutageRule;
    } else {
        decision.p_cont_mw = params.rho_cont_mw;
        decision.binding = Binding::TransmitCap;
    }
    return decision;
}

double outage_probability(const ScenarioParams& params, double tau_s, double p_cont_mw) {
    if (!(p_cont_mw > 0.0) || !std::isfinite(p_cont_mw))
        throw std::invalid_argument("outage_probability: p_cont must be positive");
    const GammaDist dist = received_power_estimate_dist(params, tau_s);
    const double threshold =
        params.theta_i_mw * params.ptran_mw / p_cont_mw + params.sigma2_mw;
    return num::reg_upper_gamma(dist.shape, threshold / dist.scale);
}

namespace {

// Outage probability when transmitting at the cap, as a function of gamma.
double outage_at_cap(const ScenarioParams& params, std::int64_t n, double gamma) {
    const GammaDist dist = received_power_dist_for_gamma(params.sigma2_mw, n, gamma);
    const double threshold =
        params.theta_i_mw * params.ptran_mw / params.rho_cont_mw + params.sigma2_mw;
    return num::reg_upper_gamma(dist.shape, threshold / dist.scale);
}

}  // namespace

OperatingRegime operating_regime_gamma(const ScenarioParams& params, double tau_s) {
    const DerivedQuantities d = derive(params, tau_s);
    const std::int64_t n = d.n_samples;

    const auto residual_db = [&](double gamma_db) {
        return outage_at_cap(params, n, std::pow(10.0, gamma_db / 10.0)) - params.rho_out;
    };

    // 0.5 dB scan of [-60, +60] dB for a sign-change bracket. The residual
    // is increasing in gamma, so the first crossing is the root.
    const double lo_db = -60.0;
    const double hi_db = 60.0;
    const double step_db = 0.5;
    double prev_db = lo_db;
    double prev_res = residual_db(prev_db);
    if (prev_res == 0.0) return OperatingRegime{std::pow(10.0, prev_db / 10.0), tau_s};
    for (double g_db = lo_db + step_db; g_db <= hi_db + 1e-9; g_db += step_db) {
        const double res = residual_db(g_db);
        if (res == 0.0) return OperatingRegime{std::pow(10.0, g_db / 10.0), tau_s};
        if (prev_res * res < 0.0) {
            num::Tolerance tol;
            tol.abs = 1e-6;  // dB resolution, ~2e-7 linear around 0 dB
            tol.max_iters = 100;
            const double root_db =
                num::find_root(residual_db, num::Interval{prev_db, g_db}, tol);
            return OperatingRegime{std::pow(10.0, root_db / 10.0), tau_s};
        }
        prev_db = g_db;
        prev_res = res;
    }
    throw num::NoSignChangeError(
        "operating_regime_gamma: outage-at-cap residual has constant sign on [-60, 60] dB",
        residual_db(lo_db), residual_db(hi_db));
}

}  // namespace underlay
