#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "underlay/scenario.hpp"

// Monte Carlo simulation of the signal models, the ground truth every
// analytic expression is validated against. Trials run on independent
// keyed substreams, so summaries are bit-identical for a given
// (master_seed, stream_id, n_trials) regardless of the worker count.

namespace underlay::mc {

enum class SamplingPath {
    Auto,       // PerSample when n_samples * n_trials is small enough
    PerSample,  // draw every received sample of the estimation window
    Decomposed, // equivalent one-shot draw of the exact estimator law
};

struct SimConfig {
    std::int64_t n_trials = 100000;
    std::uint64_t master_seed = 42;
    std::uint64_t stream_id = 0;
    int threads = 1;
    SamplingPath path = SamplingPath::Auto;
    bool keep_samples = true;
};

struct SimSummary {
    double mean = 0.0;
    double variance = 0.0;           // sample variance
    std::vector<double> samples;     // sorted; empty when keep_samples is off
    std::int64_t n = 0;
};

// Received-power estimate P_hat = (1/n) sum (mu + w)^2 with mu =
// sqrt(|h_p|^2 P_tran) and w ~ Normal(0, sigma^2), n = round(tau f_s)
// real samples per trial. The per-sample path simulates exactly that; the
// decomposed path draws the same law as (sigma^2/n) * ((Z + sqrt(lambda_p))^2
// + chi2_{n-1}), one normal and one gamma variate per trial.
SimSummary simulate_received_power(const ScenarioParams& params, double tau_s,
                                   const SimConfig& cfg);

// Access-gain estimate |hs_hat|^2 with hs_hat = h_s + e,
// e ~ Normal(0, sigma^2 / (2 N_s)).
SimSummary simulate_access_estimate(const ScenarioParams& params, const SimConfig& cfg);

// Fraction of trials with (P_hat - sigma^2)/P_tran * p_cont >= theta_I.
double empirical_outage(const ScenarioParams& params, double tau_s, double p_cont_mw,
                        const SimConfig& cfg);

// Mean over trials of (T-tau)/T * log2(1 + |hs_hat|^2 p_cont / denominator),
// p_cont from controlled_power; |hs_hat|^2 sampled from its exact law.
double empirical_throughput(const ScenarioParams& params, double tau_s, const SimConfig& cfg);

// Two-sided Kolmogorov-Smirnov distance between the stored samples and a
// reference CDF. Requires n >= 10 and stored samples.
double ks_distance(const SimSummary& summary, const std::function<double(double)>& cdf);

}  // namespace underlay::mc
