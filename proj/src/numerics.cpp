#include "underlay/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace underlay::num {

namespace {

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void validate(const Interval& iv) {
    if (!finite(iv.lo) || !finite(iv.hi) || !(iv.lo < iv.hi))
        throw std::invalid_argument("Interval requires finite lo < hi");
}

void validate(const Tolerance& tol) {
    if (!(tol.rel > 0.0) && !(tol.abs > 0.0))
        throw std::invalid_argument("Tolerance requires rel > 0 or abs > 0");
    if (tol.max_iters < 1)
        throw std::invalid_argument("Tolerance requires max_iters >= 1");
}

double log_gamma(double a) {
    if (!finite(a) || a <= 0.0)
        throw std::domain_error("log_gamma: argument must be positive and finite");

    // Lanczos, g = 7, 9 terms.
    static const double kCoeff[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    const double z = a - 1.0;
    double series = kCoeff[0];
    for (int k = 1; k < 9; ++k) series += kCoeff[k] / (z + k);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(series);
}

namespace {

constexpr int kGammaMaxIter = 20000000;

// Stirling correction series: ln Gamma(a) - [(a-1/2) ln a - a + ln(2 pi)/2],
// valid for a >= 20.
double stirling_correction(double a) {
    const double a2 = a * a;
    double inv = 1.0 / a;
    double corr = inv / 12.0;
    inv /= a2;
    corr -= inv / 360.0;
    inv /= a2;
    corr += inv / 1260.0;
    inv /= a2;
    corr -= inv / 1680.0;
    inv /= a2;
    corr += inv / 1188.0;
    return corr;
}

// a ln x - x - ln Gamma(a), with the large-a cancellation between the three
// terms removed: written as a (log1p(d) - d) + ln(a)/2 - ln(2 pi)/2 - corr(a)
// with d = (x - a)/a. Keeps the incomplete gamma accurate for the huge
// shapes a ~ tau f_s the estimator distributions produce.
double log_gamma_prefactor(double a, double x) {
    if (a < 20.0) return a * std::log(x) - x - log_gamma(a);
    const double d = (x - a) / a;
    return a * (std::log1p(d) - d) + 0.5 * std::log(a) -
           0.5 * std::log(2.0 * M_PI) - stirling_correction(a);
}

// Lower series: P(a,x) = x^a e^{-x} / Gamma(a) * sum_k x^k / (a (a+1)...(a+k)).
double lower_gamma_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < kGammaMaxIter; ++k) {
        term *= x / (a + k);
        sum += term;
        if (term < sum * 1e-17)
            return std::exp(log_gamma_prefactor(a, x)) * sum;
    }
    throw std::runtime_error("reg_lower_gamma: series did not converge");
}

// Upper continued fraction (modified Lentz): Q(a,x) = x^a e^{-x}/Gamma(a) * CF.
double upper_gamma_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kGammaMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16)
            return std::exp(log_gamma_prefactor(a, x)) * h;
    }
    throw std::runtime_error("reg_upper_gamma: continued fraction did not converge");
}

void check_gamma_domain(double a, double x) {
    if (!std::isfinite(a) || a <= 0.0)
        throw std::domain_error("incomplete gamma: shape must be positive and finite");
    if (!std::isfinite(x) || x < 0.0)
        throw std::domain_error("incomplete gamma: x must be nonnegative and finite");
}

}  // namespace

double reg_lower_gamma(double a, double x) {
    check_gamma_domain(a, x);
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) {
        const double p = lower_gamma_series(a, x);
        return std::clamp(p, 0.0, 1.0);
    }
    const double q = upper_gamma_cf(a, x);
    return std::clamp(1.0 - q, 0.0, 1.0);
}

double reg_upper_gamma(double a, double x) {
    check_gamma_domain(a, x);
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return std::clamp(1.0 - lower_gamma_series(a, x), 0.0, 1.0);
    return std::clamp(upper_gamma_cf(a, x), 0.0, 1.0);
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("inverse_normal_cdf: p must lie in (0, 1)");

    // Acklam's rational approximation, then one Newton step against erfc.
    static const double A[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double B[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double C[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double D[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double z;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        z = (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
            ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        z = (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q /
            (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        z = -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
            ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
    }
    const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
    const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
    if (pdf > 0.0) z -= (cdf - p) / pdf;
    return z;
}

double inv_reg_lower_gamma(double a, double p) {
    if (!std::isfinite(a) || a <= 0.0)
        throw std::domain_error("inv_reg_lower_gamma: shape must be positive and finite");
    if (!std::isfinite(p) || p < 0.0 || p >= 1.0)
        throw std::domain_error("inv_reg_lower_gamma: p must lie in [0, 1)");
    if (p == 0.0) return 0.0;

    // Wilson-Hilferty seed.
    const double z = inverse_normal_cdf(p);
    const double c = 1.0 / (9.0 * a);
    double x = a * std::pow(std::max(1.0 - c + z * std::sqrt(c), 0.1), 3.0);
    if (!(x > 0.0) || !std::isfinite(x)) x = a;

    // Maintain a bracket [lo, hi] with P(lo) < p < P(hi).
    double lo = 0.0;
    double hi = std::max(x, a + 10.0 * std::sqrt(a) + 10.0);
    while (reg_lower_gamma(a, hi) < p) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi))
            throw std::runtime_error("inv_reg_lower_gamma: bracket expansion failed");
    }
    if (x <= lo || x >= hi) x = 0.5 * (lo + hi);

    const double lg = log_gamma(a);
    for (int iter = 0; iter < 200; ++iter) {
        const double f = reg_lower_gamma(a, x) - p;
        if (std::fabs(f) <= 1e-12) return x;
        if (f > 0.0) hi = std::min(hi, x); else lo = std::max(lo, x);
        const double logpdf = (a - 1.0) * std::log(x) - x - lg;
        double next;
        if (logpdf > -700.0) {
            next = x - f / std::exp(logpdf);
        } else {
            next = 0.5 * (lo + hi);
        }
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (next == x) return x;
        x = next;
    }
    return x;  // |P(a,x) - p| is already far below 1e-10 for any reachable case
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (positive half).
const double kKronrodNodes[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
const double kKronrodWeights[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};
const double kGaussWeights[4] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870};

struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double gauss = 0.0;
    double kronrod = 0.0;
    for (int i = 0; i < 8; ++i) {
        double y;
        if (i == 0) {
            y = f(mid);
        } else {
            const double dx = half * kKronrodNodes[i];
            y = f(mid + dx) + f(mid - dx);
        }
        if (!std::isfinite(y))
            throw std::domain_error("integrate: integrand not finite inside interval");
        kronrod += kKronrodWeights[i] * y;
        if (i % 2 == 0) gauss += kGaussWeights[i / 2] * y;
    }
    gauss *= half;
    kronrod *= half;
    const double diff = std::fabs(kronrod - gauss);
    // Scaled error heuristic from QUADPACK.
    const double err = diff * std::min(1.0, std::pow(200.0 * diff / std::max(std::fabs(kronrod), 1e-300), 1.5));
    return Panel{lo, hi, kronrod, std::max(err, diff * 1e-6)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, Interval iv, Tolerance tol) {
    validate(iv);
    validate(tol);

    std::priority_queue<Panel> panels;
    Panel first = evaluate_panel(f, iv.lo, iv.hi);
    double total = first.value;
    double total_err = first.error;
    panels.push(first);

    for (int split = 0; split < tol.max_iters; ++split) {
        const double target = std::max(tol.abs, tol.rel * std::fabs(total));
        if (total_err <= target) return total;

        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            // Interval exhausted at double resolution; put it back and stop refining it.
            panels.push(Panel{worst.lo, worst.hi, worst.value, 0.0});
            total_err -= worst.error;
            continue;
        }
        Panel left = evaluate_panel(f, worst.lo, mid);
        Panel right = evaluate_panel(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    const double target = std::max(tol.abs, tol.rel * std::fabs(total));
    if (total_err <= target) return total;
    throw QuadratureError("integrate: did not converge within max_iters subdivisions",
                          total, total_err);
}

double find_root(const std::function<double(double)>& f, Interval bracket, Tolerance tol) {
    validate(bracket);
    validate(tol);
    double lo = bracket.lo;
    double hi = bracket.hi;
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0)
        throw NoSignChangeError("find_root: f has the same sign at both bracket ends", flo, fhi);

    for (int iter = 0; iter < std::max(tol.max_iters, 64); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (0.5 * (hi - lo) <= tol.abs || mid <= lo || mid >= hi) return mid;
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if (flo * fmid < 0.0) {
            hi = mid;
            fhi = fmid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    return 0.5 * (lo + hi);
}

ScalarMax maximize_scalar(const std::function<double(double)>& f, Interval iv,
                          Tolerance tol, int grid_points) {
    validate(iv);
    validate(tol);
    const int n = std::max(grid_points, 64);

    // Coarse scan; strict > keeps the smallest argmax on ties.
    std::vector<double> xs(n), ys(n);
    int best = 0;
    for (int i = 0; i < n; ++i) {
        xs[i] = iv.lo + (iv.hi - iv.lo) * static_cast<double>(i) / (n - 1);
        ys[i] = f(xs[i]);
        if (!std::isfinite(ys[i]))
            throw std::domain_error("maximize_scalar: objective not finite on grid");
        if (ys[i] > ys[best]) best = i;
    }

    // Golden-section refinement inside the bracket around the best sample.
    double a = xs[std::max(best - 1, 0)];
    double b = xs[std::min(best + 1, n - 1)];
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    const double xtol = std::max(tol.abs, tol.rel * (iv.hi - iv.lo));
    for (int iter = 0; iter < tol.max_iters && (b - a) > xtol; ++iter) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    const double xm = 0.5 * (a + b);
    const double fm = f(xm);

    ScalarMax result{xs[best], ys[best]};
    if (fc > result.value) result = {c, fc};
    if (fd > result.value) result = {d, fd};
    if (fm > result.value) result = {xm, fm};
    return result;
}

}  // namespace underlay::num
