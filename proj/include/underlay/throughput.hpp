#pragma once

#include "underlay/power_control.hpp"
#include "underlay/scenario.hpp"

// Secondary-link throughput: the ideal benchmark (known channels, no
// estimation phase) and the expected throughput of the estimation model,
// averaged over the access-gain estimate.

namespace underlay {

struct ThroughputPoint {
    double tau_s = 0.0;
    double rate_bits = 0.0;  // bits/s/Hz
    double p_cont_mw = 0.0;
    Binding binding = Binding::OutageRule;
};

// log2(1 + |h_s|^2 * (theta_I/|h_p|^2) / denominator). No time-sharing
// factor: the benchmark spends no time estimating.
double ideal_throughput(const ScenarioParams& params);

// (T - tau)/T * E[ log2(1 + X p_cont / denominator) ], X the Gamma
// approximation of the access-gain estimate, p_cont from controlled_power.
// The expectation integrates the Gamma density truncated at quantiles 1e-12
// and 1 - 1e-12 with relative tolerance 1e-8.
ThroughputPoint expected_throughput(const ScenarioParams& params, double tau_s);

}  // namespace underlay
