#include "underlay/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace underlay {

ScenarioParams default_scenario() {
    return ScenarioParams{};
}

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw std::invalid_argument("ScenarioParams." + field + ": " + what);
}

}  // namespace

void validate(const ScenarioParams& p) {
    require(std::isfinite(p.fs_hz) && p.fs_hz >= 1.0, "fs_hz", "must be >= 1");
    require(std::isfinite(p.frame_s) && p.frame_s > 0.0, "frame_s", "must be positive");
    require(std::isfinite(p.sigma2_mw) && p.sigma2_mw > 0.0, "sigma2_mw", "must be positive");
    require(std::isfinite(p.ptran_mw) && p.ptran_mw > 0.0, "ptran_mw", "must be positive");
    require(std::isfinite(p.theta_i_mw) && p.theta_i_mw > 0.0, "theta_i_mw", "must be positive");
    require(std::isfinite(p.rho_out) && p.rho_out > 0.0 && p.rho_out < 1.0, "rho_out",
            "must lie in (0, 1)");
    require(std::isfinite(p.rho_cont_mw) && p.rho_cont_mw > 0.0, "rho_cont_mw",
            "must be positive");
    require(p.n_pilot >= 1, "n_pilot", "must be >= 1");
    require(std::isfinite(p.gain_p) && p.gain_p > 0.0, "gain_p", "must be positive");
    require(std::isfinite(p.hs_amplitude) && p.hs_amplitude != 0.0, "hs_amplitude",
            "must be nonzero");
    require(std::isfinite(p.snr_sr_denominator_mw) && p.snr_sr_denominator_mw > 0.0,
            "snr_sr_denominator_mw", "must be positive");
}

DerivedQuantities derive(const ScenarioParams& params, double tau_s) {
    validate(params);
    if (!std::isfinite(tau_s) || tau_s < 2.0 / params.fs_hz || tau_s >= params.frame_s)
        throw std::invalid_argument("derive: tau must satisfy 2/f_s <= tau < T");

    DerivedQuantities d;
    d.gamma = params.gamma();
    d.n_samples = static_cast<std::int64_t>(std::llround(tau_s * params.fs_hz));
    if (d.n_samples < 2) d.n_samples = 2;
    d.lambda_p = static_cast<double>(d.n_samples) * d.gamma;
    d.lambda_s = 2.0 * static_cast<double>(params.n_pilot) * params.hs_gain() / params.sigma2_mw;
    return d;
}

}  // namespace underlay
