#pragma once

#include <vector>

#include "underlay/throughput.hpp"

// Estimation-time / throughput tradeoff: sweep the expected rate over tau
// and locate the optimum estimation time.

namespace underlay {

struct TradeoffResult {
    std::vector<ThroughputPoint> grid;
    double tau_opt_s = 0.0;
    double rate_opt_bits = 0.0;
};

// One ThroughputPoint per grid entry; the grid must be strictly increasing
// and inside [2/f_s, T). Evaluation errors are rethrown with the offending
// tau named.
std::vector<ThroughputPoint> tradeoff_curve(const ScenarioParams& params,
                                            const std::vector<double>& tau_grid_s);

// Log-spaced scan (at least 64 points) of the search interval followed by
// golden-section refinement around the best sample. The rate surface can
// have a kink where the binding constraint switches, so the refined value is
// never allowed below the best grid sample. Deterministic.
TradeoffResult optimize_estimation_time(const ScenarioParams& params,
                                        double tau_lo_s, double tau_hi_s,
                                        int grid_points = 64);

// Search interval used by the sweeps: [10/f_s, 0.99 T].
TradeoffResult optimize_estimation_time(const ScenarioParams& params);

}  // namespace underlay
