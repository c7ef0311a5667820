#pragma once

#include <cstdint>

#include "underlay/rng.hpp"
#include "underlay/scenario.hpp"

// Distributions of the two channel estimators: the exact noncentral
// chi-squared laws and the two-moment Gamma approximations the closed-form
// analysis runs on, with CDF, quantile, density and sampling.

namespace underlay {

// Scaled noncentral chi-squared: X = scale * Y with Y ~ ncx2(dof, noncentrality).
struct NoncentralChiSquare {
    double dof = 1.0;
    double noncentrality = 0.0;
    double scale = 1.0;

    double mean() const { return scale * (dof + noncentrality); }
    double variance() const { return scale * scale * 2.0 * (dof + 2.0 * noncentrality); }
};

struct GammaDist {
    double shape = 1.0;
    double scale = 1.0;

    double mean() const { return shape * scale; }
    double variance() const { return shape * scale * scale; }
};

void validate(const NoncentralChiSquare& d);
void validate(const GammaDist& d);

// Gamma with the same mean and variance as the given noncentral chi-squared:
// shape = (k+l)^2 / (2(k+2l)), scale = c * 2(k+2l) / (k+l).
GammaDist moment_match(const NoncentralChiSquare& ncx2);

// Exact law of the received-power estimate P_hat = (1/n) sum y[i]^2:
// (n/sigma^2) P_hat ~ ncx2(n*gamma, n), i.e. scale sigma^2/n.
NoncentralChiSquare received_power_exact_law(const ScenarioParams& params, double tau_s);

// Gamma approximation of P_hat (shape a1, scale b1); mean = sigma^2 (1+gamma).
GammaDist received_power_estimate_dist(const ScenarioParams& params, double tau_s);

// Same approximation with gamma as a free variable (used by the operating
// regime solver, where the interference channel strength is the unknown).
GammaDist received_power_dist_for_gamma(double sigma2_mw, std::int64_t n_samples, double gamma);

// Exact law of the access-gain estimate |hs_hat|^2 where
// hs_hat ~ Normal(h_s, sigma^2/(2 N_s)): ncx2 with 1 dof,
// noncentrality 2 N_s h_s^2 / sigma^2 and unit scale sigma^2/(2 N_s).
NoncentralChiSquare access_gain_exact_law(const ScenarioParams& params);

// Gamma approximation of |hs_hat|^2 (shape a2, scale b2);
// mean = h_s^2 + sigma^2/(2 N_s).
GammaDist access_gain_estimate_dist(const ScenarioParams& params);

double gamma_pdf(const GammaDist& d, double x);
double gamma_cdf(const GammaDist& d, double x);
double gamma_quantile(const GammaDist& d, double p);

// Marsaglia-Tsang rejection sampling; uses the caller's stream so parallel
// trials stay independent.
double gamma_sample(const GammaDist& d, RngStream& rng);

}  // namespace underlay
