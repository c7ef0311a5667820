#include "underlay/throughput.hpp"

#include <cmath>

#include "underlay/distributions.hpp"
#include "underlay/numerics.hpp"

namespace underlay {

double ideal_throughput(const ScenarioParams& params) {
    const double p = ideal_controlled_power(params);
    return std::log2(1.0 + params.hs_gain() * p / params.snr_sr_denominator_mw);
}

ThroughputPoint expected_throughput(const ScenarioParams& params, double tau_s) {
    const PowerDecision decision = controlled_power(params, tau_s);
    const GammaDist gain = access_gain_estimate_dist(params);

    const double lo = gamma_quantile(gain, 1e-12);
    const double hi = gamma_quantile(gain, 1.0 - 1e-12);
    const double snr_per_gain = decision.p_cont_mw / params.snr_sr_denominator_mw;
    const auto integrand = [&](double x) {
        return gamma_pdf(gain, x) * std::log2(1.0 + x * snr_per_gain);
    };
    num::Tolerance tol;
    tol.rel = 1e-8;
    tol.abs = 0.0;
    tol.max_iters = 2000;
    const double expectation = num::integrate(integrand, num::Interval{lo, hi}, tol);

    ThroughputPoint point;
    point.tau_s = tau_s;
    point.rate_bits = (params.frame_s - tau_s) / params.frame_s * expectation;
    point.p_cont_mw = decision.p_cont_mw;
    point.binding = decision.binding;
    return point;
}

}  // namespace underlay
