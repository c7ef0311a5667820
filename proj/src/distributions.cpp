#include "underlay/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include "underlay/numerics.hpp"

namespace underlay {

void validate(const NoncentralChiSquare& d) {
    if (!(d.dof > 0.0) || !std::isfinite(d.dof))
        throw std::invalid_argument("NoncentralChiSquare.dof must be positive");
    if (!(d.noncentrality >= 0.0) || !std::isfinite(d.noncentrality))
        throw std::invalid_argument("NoncentralChiSquare.noncentrality must be nonnegative");
    if (!(d.scale > 0.0) || !std::isfinite(d.scale))
        throw std::invalid_argument("NoncentralChiSquare.scale must be positive");
}

void validate(const GammaDist& d) {
    if (!(d.shape > 0.0) || !std::isfinite(d.shape))
        throw std::invalid_argument("GammaDist.shape must be positive");
    if (!(d.scale > 0.0) || !std::isfinite(d.scale))
        throw std::invalid_argument("GammaDist.scale must be positive");
}

GammaDist moment_match(const NoncentralChiSquare& ncx2) {
    validate(ncx2);
    const double k = ncx2.dof;
    const double l = ncx2.noncentrality;
    GammaDist g;
    g.shape = (k + l) * (k + l) / (2.0 * (k + 2.0 * l));
    g.scale = ncx2.scale * 2.0 * (k + 2.0 * l) / (k + l);
    return g;
}

NoncentralChiSquare received_power_exact_law(const ScenarioParams& params, double tau_s) {
    const DerivedQuantities d = derive(params, tau_s);
    NoncentralChiSquare law;
    law.dof = static_cast<double>(d.n_samples);
    law.noncentrality = d.lambda_p;
    law.scale = params.sigma2_mw / static_cast<double>(d.n_samples);
    return law;
}

GammaDist received_power_estimate_dist(const ScenarioParams& params, double tau_s) {
    return moment_match(received_power_exact_law(params, tau_s));
}

GammaDist received_power_dist_for_gamma(double sigma2_mw, std::int64_t n_samples, double gamma) {
    if (!(sigma2_mw > 0.0) || n_samples < 2 || !(gamma > 0.0))
        throw std::invalid_argument("received_power_dist_for_gamma: bad arguments");
    NoncentralChiSquare law;
    law.dof = static_cast<double>(n_samples);
    law.noncentrality = static_cast<double>(n_samples) * gamma;
    law.scale = sigma2_mw / static_cast<double>(n_samples);
    return moment_match(law);
}

NoncentralChiSquare access_gain_exact_law(const ScenarioParams& params) {
    validate(params);
    NoncentralChiSquare law;
    law.dof = 1.0;
    law.noncentrality = 2.0 * static_cast<double>(params.n_pilot) * params.hs_gain() /
                        params.sigma2_mw;
    law.scale = params.sigma2_mw / (2.0 * static_cast<double>(params.n_pilot));
    return law;
}

GammaDist access_gain_estimate_dist(const ScenarioParams& params) {
    return moment_match(access_gain_exact_law(params));
}

double gamma_pdf(const GammaDist& d, double x) {
    validate(d);
    if (!std::isfinite(x)) throw std::domain_error("gamma_pdf: non-finite x");
    if (x <= 0.0) return 0.0;
    const double z = x / d.scale;
    const double logpdf = (d.shape - 1.0) * std::log(z) - z -
                          num::log_gamma(d.shape) - std::log(d.scale);
    return std::exp(logpdf);
}

double gamma_cdf(const GammaDist& d, double x) {
    validate(d);
    if (!std::isfinite(x)) throw std::domain_error("gamma_cdf: non-finite x");
    if (x <= 0.0) return 0.0;
    return num::reg_lower_gamma(d.shape, x / d.scale);
}

double gamma_quantile(const GammaDist& d, double p) {
    validate(d);
    return d.scale * num::inv_reg_lower_gamma(d.shape, p);
}

double gamma_sample(const GammaDist& d, RngStream& rng) {
    validate(d);
    double shape = d.shape;
    double boost = 1.0;
    if (shape < 1.0) {
        // Sample with shape+1 and multiply by U^{1/shape}.
        boost = std::pow(rng.next_double(), 1.0 / shape);
        shape += 1.0;
    }
    const double dd = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * dd);
    for (;;) {
        double x, v;
        do {
            x = rng.next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.next_double();
        if (u < 1.0 - 0.0331 * x * x * x * x)
            return d.scale * boost * dd * v;
        if (std::log(u) < 0.5 * x * x + dd * (1.0 - v + std::log(v)))
            return d.scale * boost * dd * v;
    }
}

}  // namespace underlay
