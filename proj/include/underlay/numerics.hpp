#pragma once

#include <functional>
#include <stdexcept>
#include <string>

// Scalar numerics used by the analytic pipeline: log-gamma, regularized
// incomplete gamma (lower/upper) and its inverse, adaptive quadrature,
// bracketed root finding and grid-guarded golden-section maximization.
// Everything here is pure and reentrant.

namespace underlay::num {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

struct Tolerance {
    double rel = 1e-10;
    double abs = 1e-12;
    int max_iters = 200;
};

void validate(const Interval& iv);
void validate(const Tolerance& tol);

// Quadrature ran out of subdivisions; carries the best estimate so far.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double best, double err)
        : std::runtime_error(what), best_estimate(best), error_estimate(err) {}
    double best_estimate;
    double error_estimate;
};

// find_root precondition failure: f has the same sign at both bracket ends.
class NoSignChangeError : public std::runtime_error {
public:
    NoSignChangeError(const std::string& what, double flo, double fhi)
        : std::runtime_error(what), f_lo(flo), f_hi(fhi) {}
    double f_lo;
    double f_hi;
};

// ln Gamma(a), a > 0. Lanczos approximation, relative error below 1e-13
// across [1e-3, 1e8].
double log_gamma(double a);

// Regularized lower incomplete gamma P(a, x) = gamma(a,x) / Gamma(a).
// Series for x < a+1, continued fraction otherwise.
double reg_lower_gamma(double a, double x);

// Q(a, x) = 1 - P(a, x), computed on the accurate branch for either tail.
double reg_upper_gamma(double a, double x);

// Inverse of P(a, .) in x: returns x with P(a, x) = p, p in [0, 1).
// Newton seeded by the Wilson-Hilferty approximation, bisection fallback.
double inv_reg_lower_gamma(double a, double p);

// Standard normal quantile, used as the Wilson-Hilferty seed.
double inverse_normal_cdf(double p);

// Adaptive Gauss-Kronrod (G7K15) panel quadrature of f over [lo, hi].
// Splits the worst panel until the accumulated error estimate drops below
// max(tol.abs, tol.rel * |integral|); throws QuadratureError after
// tol.max_iters subdivisions.
double integrate(const std::function<double(double)>& f, Interval iv, Tolerance tol);

// Bisection on a sign-changing bracket to |x - x*| <= tol.abs.
double find_root(const std::function<double(double)>& f, Interval bracket, Tolerance tol);

struct ScalarMax {
    double argmax = 0.0;
    double value = 0.0;
};

// Coarse uniform scan (at least 64 points) followed by golden-section
// refinement inside the best bracket. Never returns less than the best
// grid sample; ties resolve to the smallest argmax on the grid.
ScalarMax maximize_scalar(const std::function<double(double)>& f, Interval iv,
                          Tolerance tol, int grid_points = 64);

}  // namespace underlay::num
