#include "underlay/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "underlay/distributions.hpp"
#include "underlay/parallel.hpp"
#include "underlay/power_control.hpp"
#include "underlay/rng.hpp"

namespace underlay::mc {

namespace {

constexpr std::int64_t kBlockSize = 4096;

// Distinct stream salts per operation so different simulators never replay
// one another's draws under the same (seed, stream_id).
constexpr std::uint64_t kSaltReceivedPower = 0x7263766470777200ULL;
constexpr std::uint64_t kSaltAccessGain = 0x6163636573736700ULL;
constexpr std::uint64_t kSaltOutage = 0x6f757467616f7500ULL;
constexpr std::uint64_t kSaltThroughput = 0x7468726f75676800ULL;

struct Moments {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }
    void merge(const Moments& other) {
        if (other.n == 0) return;
        if (n == 0) { *this = other; return; }
        const double total = static_cast<double>(n + other.n);
        const double delta = other.mean - mean;
        mean += delta * static_cast<double>(other.n) / total;
        m2 += other.m2 + delta * delta * static_cast<double>(n) *
              static_cast<double>(other.n) / total;
        n += other.n;
    }
};

bool use_per_sample(const SimConfig& cfg, std::int64_t n_samples) {
    switch (cfg.path) {
        case SamplingPath::PerSample: return true;
        case SamplingPath::Decomposed: return false;
        case SamplingPath::Auto: break;
    }
    // Per-sample up to ~2e8 total draws; beyond that the O(1) exact draw
    // keeps the large calibration runs inside their time budgets.
    return static_cast<double>(cfg.n_trials) * static_cast<double>(n_samples) <= 2e8;
}

void check_config(const SimConfig& cfg) {
    if (cfg.n_trials < 1)
        throw std::invalid_argument("SimConfig.n_trials must be >= 1");
}

// Runs `value(trial, rng)` for every trial on keyed substreams and reduces
// per fixed-size block, merging blocks in index order.
template <typename ValueFn>
SimSummary run_trials(const SimConfig& cfg, std::uint64_t salt, bool keep_samples,
                      const ValueFn& value) {
    const std::int64_t n_blocks = (cfg.n_trials + kBlockSize - 1) / kBlockSize;
    std::vector<Moments> block_moments(n_blocks);
    std::vector<std::vector<double>> block_samples(keep_samples ? n_blocks : 0);

    parallel_for_blocks(n_blocks, cfg.threads, [&](std::int64_t b) {
        const std::int64_t lo = b * kBlockSize;
        const std::int64_t hi = std::min(lo + kBlockSize, cfg.n_trials);
        Moments m;
        std::vector<double> local;
        if (keep_samples) local.reserve(hi - lo);
        for (std::int64_t trial = lo; trial < hi; ++trial) {
            RngStream rng(cfg.master_seed, cfg.stream_id ^ salt,
                          static_cast<std::uint64_t>(trial));
            const double x = value(rng);
            m.add(x);
            if (keep_samples) local.push_back(x);
        }
        block_moments[b] = m;
        if (keep_samples) block_samples[b] = std::move(local);
    });

    Moments total;
    for (const auto& m : block_moments) total.merge(m);

    SimSummary summary;
    summary.n = total.n;
    summary.mean = total.mean;
    summary.variance = total.n > 1 ? total.m2 / static_cast<double>(total.n - 1) : 0.0;
    if (keep_samples) {
        summary.samples.reserve(cfg.n_trials);
        for (auto& block : block_samples)
            summary.samples.insert(summary.samples.end(), block.begin(), block.end());
        std::sort(summary.samples.begin(), summary.samples.end());
    }
    return summary;
}

// One received-power estimate trial.
struct ReceivedPowerDraw {
    double sigma2;
    double mu;            // per-sample mean sqrt(|h_p|^2 P_tran)
    std::int64_t n;
    bool per_sample;
    double noise_sd;
    double sqrt_lambda;
    GammaDist chi2_rest;  // chi-squared with n-1 dof

    explicit ReceivedPowerDraw(const ScenarioParams& params, double tau_s,
                               const SimConfig& cfg) {
        const DerivedQuantities d = derive(params, tau_s);
        sigma2 = params.sigma2_mw;
        mu = std::sqrt(params.gain_p * params.ptran_mw);
        n = d.n_samples;
        per_sample = use_per_sample(cfg, n);
        noise_sd = std::sqrt(sigma2);
        sqrt_lambda = std::sqrt(d.lambda_p);
        chi2_rest = GammaDist{static_cast<double>(n - 1) / 2.0, 2.0};
    }

    double operator()(RngStream& rng) const {
        if (per_sample) {
            double acc = 0.0;
            for (std::int64_t i = 0; i < n; ++i) {
                const double y = mu + noise_sd * rng.next_normal();
                acc += y * y;
            }
            return acc / static_cast<double>(n);
        }
        const double z = rng.next_normal() + sqrt_lambda;
        const double rest = n > 1 ? gamma_sample(chi2_rest, rng) : 0.0;
        return sigma2 / static_cast<double>(n) * (z * z + rest);
    }
};

}  // namespace

SimSummary simulate_received_power(const ScenarioParams& params, double tau_s,
                                   const SimConfig& cfg) {
    check_config(cfg);
    const ReceivedPowerDraw draw(params, tau_s, cfg);
    return run_trials(cfg, kSaltReceivedPower, cfg.keep_samples,
                      [&](RngStream& rng) { return draw(rng); });
}

SimSummary simulate_access_estimate(const ScenarioParams& params, const SimConfig& cfg) {
    check_config(cfg);
    validate(params);
    const double err_sd =
        std::sqrt(params.sigma2_mw / (2.0 * static_cast<double>(params.n_pilot)));
    const double hs = params.hs_amplitude;
    return run_trials(cfg, kSaltAccessGain, cfg.keep_samples, [&](RngStream& rng) {
        const double est = hs + err_sd * rng.next_normal();
        return est * est;
    });
}

double empirical_outage(const ScenarioParams& params, double tau_s, double p_cont_mw,
                        const SimConfig& cfg) {
    check_config(cfg);
    if (!(p_cont_mw > 0.0))
        throw std::invalid_argument("empirical_outage: p_cont must be positive");
    const ReceivedPowerDraw draw(params, tau_s, cfg);
    const double threshold =
        params.theta_i_mw * params.ptran_mw / p_cont_mw + params.sigma2_mw;
    const SimSummary summary =
        run_trials(cfg, kSaltOutage, false,
                   [&](RngStream& rng) { return draw(rng) >= threshold ? 1.0 : 0.0; });
    return summary.mean;
}

double empirical_throughput(const ScenarioParams& params, double tau_s, const SimConfig& cfg) {
    check_config(cfg);
    const PowerDecision decision = controlled_power(params, tau_s);
    const double snr_per_gain = decision.p_cont_mw / params.snr_sr_denominator_mw;
    const double err_sd =
        std::sqrt(params.sigma2_mw / (2.0 * static_cast<double>(params.n_pilot)));
    const double hs = params.hs_amplitude;
    const SimSummary summary =
        run_trials(cfg, kSaltThroughput, false, [&](RngStream& rng) {
            const double est = hs + err_sd * rng.next_normal();
            return std::log2(1.0 + est * est * snr_per_gain);
        });
    return (params.frame_s - tau_s) / params.frame_s * summary.mean;
}

double ks_distance(const SimSummary& summary, const std::function<double(double)>& cdf) {
    if (summary.n < 10 || summary.samples.size() < 10)
        throw std::invalid_argument("ks_distance: need at least 10 stored samples");
    const double n = static_cast<double>(summary.samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < summary.samples.size(); ++i) {
        const double f = cdf(summary.samples[i]);
        const double hi = (static_cast<double>(i) + 1.0) / n - f;
        const double lo = f - static_cast<double>(i) / n;
        d = std::max({d, hi, lo});
    }
    return d;
}

}  // namespace underlay::mc
