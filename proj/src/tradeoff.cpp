#include "underlay/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "underlay/numerics.hpp"

namespace underlay {

std::vector<ThroughputPoint> tradeoff_curve(const ScenarioParams& params,
                                            const std::vector<double>& tau_grid_s) {
    if (tau_grid_s.empty())
        throw std::invalid_argument("tradeoff_curve: empty tau grid");
    for (std::size_t i = 1; i < tau_grid_s.size(); ++i)
        if (!(tau_grid_s[i] > tau_grid_s[i - 1]))
            throw std::invalid_argument("tradeoff_curve: tau grid must be strictly increasing");

    std::vector<ThroughputPoint> points;
    points.reserve(tau_grid_s.size());
    for (double tau : tau_grid_s) {
        try {
            points.push_back(expected_throughput(params, tau));
        } catch (const std::exception& e) {
            throw std::runtime_error("tradeoff_curve: evaluation failed at tau = " +
                                     std::to_string(tau) + " s: " + e.what());
        }
    }
    return points;
}

TradeoffResult optimize_estimation_time(const ScenarioParams& params,
                                        double tau_lo_s, double tau_hi_s,
                                        int grid_points) {
    validate(params);
    if (!(tau_lo_s < tau_hi_s) || tau_lo_s < 2.0 / params.fs_hz || tau_hi_s >= params.frame_s)
        throw std::invalid_argument(
            "optimize_estimation_time: search interval must lie in [2/f_s, T)");

    const int n = std::max(grid_points, 64);
    std::vector<double> grid(n);
    const double log_lo = std::log(tau_lo_s);
    const double log_hi = std::log(tau_hi_s);
    for (int i = 0; i < n; ++i)
        grid[i] = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) / (n - 1));
    grid.front() = tau_lo_s;
    grid.back() = tau_hi_s;

    TradeoffResult result;
    result.grid = tradeoff_curve(params, grid);

    int best = 0;
    for (int i = 1; i < n; ++i)
        if (result.grid[i].rate_bits > result.grid[best].rate_bits) best = i;

    // Golden-section in log-tau inside the bracket around the best sample.
    const double bracket_lo = std::log(grid[std::max(best - 1, 0)]);
    const double bracket_hi = std::log(grid[std::min(best + 1, n - 1)]);
    const auto rate_of_log_tau = [&](double u) {
        return expected_throughput(params, std::exp(u)).rate_bits;
    };
    num::Tolerance tol;
    tol.rel = 0.0;
    tol.abs = 1e-7;  // log-tau units; well below one sample at f_s = 1 MHz
    tol.max_iters = 200;
    const num::ScalarMax refined =
        num::maximize_scalar(rate_of_log_tau, num::Interval{bracket_lo, bracket_hi}, tol);

    result.tau_opt_s = grid[best];
    result.rate_opt_bits = result.grid[best].rate_bits;
    if (refined.value > result.rate_opt_bits) {
        result.tau_opt_s = std::exp(refined.argmax);
        result.rate_opt_bits = refined.value;
    }

    // The estimator only sees n = round(tau f_s), so the rate is a fine
    // sawtooth: within one sample count it peaks at the smallest tau mapping
    // to that n. Refine over the integer sample count so the optimum does
    // not depend on where the scan grids happened to land inside a tooth.
    const auto tooth_rate = [&](std::int64_t samples) -> double {
        double tau = (static_cast<double>(samples) - 0.499) / params.fs_hz;
        tau = std::clamp(tau, tau_lo_s, tau_hi_s);
        if (std::llround(tau * params.fs_hz) != samples)
            return -std::numeric_limits<double>::infinity();
        return expected_throughput(params, tau).rate_bits;
    };
    for (double seed_tau : {result.tau_opt_s, grid[best]}) {
        std::int64_t samples = std::llround(seed_tau * params.fs_hz);
        double value = tooth_rate(samples);
        for (int step = 0; step < 100000; ++step) {
            const double up = tooth_rate(samples + 1);
            const double down = tooth_rate(samples - 1);
            if (up > value && up >= down) {
                ++samples;
                value = up;
            } else if (down > value) {
                --samples;
                value = down;
            } else {
                break;
            }
        }
        if (value > result.rate_opt_bits) {
            result.rate_opt_bits = value;
            result.tau_opt_s = std::clamp(
                (static_cast<double>(samples) - 0.499) / params.fs_hz, tau_lo_s, tau_hi_s);
        }
    }
    return result;
}

TradeoffResult optimize_estimation_time(const ScenarioParams& params) {
    const double lo = 10.0 / params.fs_hz;
    const double hi = 0.99 * params.frame_s;
    return optimize_estimation_time(params, lo, hi);
}

}  // namespace underlay
