#pragma once

#include "underlay/scenario.hpp"

// Transmit power selection at the secondary transmitter: the ideal rule
// (known interference channel), the estimation-based rule under the outage
// and transmit power constraints, the outage probability of a given power,
// and the cap-vs-outage operating regime boundary in gamma.

namespace underlay {

enum class Binding {
    OutageRule,   // outage constraint active, power below the cap
    TransmitCap,  // hard cap rho_cont active
};

struct PowerDecision {
    double p_cont_mw = 0.0;
    Binding binding = Binding::OutageRule;
    // Upper quantile of the received-power estimate that sets the back-off:
    // b1 * invP(a1, 1 - rho_out), in mW.
    double quantile_point_mw = 0.0;
};

struct OperatingRegime {
    double gamma_star = 1.0;  // linear ratio
    double tau_s = 0.0;
};

// Ideal power theta_I / |h_p|^2. Uncapped by default: the benchmark assumes
// perfect channel knowledge and no hardware limit. Pass apply_cap for the
// capped variant.
double ideal_controlled_power(const ScenarioParams& params, bool apply_cap = false);

// Estimation-based power: candidate = theta_I P_tran / (q - sigma^2) with q
// the (1-rho_out) quantile of the power estimate, capped at rho_cont. If the
// quantile does not exceed the noise floor the outage constraint is vacuous
// and the cap is returned.
PowerDecision controlled_power(const ScenarioParams& params, double tau_s);

// Pr[(P_hat - sigma^2)/P_tran * p_cont >= theta_I] under the Gamma
// approximation of P_hat.
double outage_probability(const ScenarioParams& params, double tau_s, double p_cont_mw);

// Root of  rho_out = 1 - P(a1(g), (theta_I P_tran / rho_cont + sigma^2)/b1(g))
// in g, bracketed by a 0.5 dB scan of [-60, +60] dB and refined by bisection.
// Below gamma_star the cap binds; above it the outage rule binds.
// Throws NoSignChangeError (with the endpoint residuals) if the scan finds
// no sign change.
OperatingRegime operating_regime_gamma(const ScenarioParams& params, double tau_s);

}  // namespace underlay
