#pragma once

#include <cstdint>

// Scenario record for one short-term operating point of the underlay link:
// noise and transmit powers, interference threshold, constraint budgets,
// frame timing and the two deterministic channel gains. Linear units
// throughout (powers in mW, gains dimensionless).

namespace underlay {

struct ScenarioParams {
    double fs_hz = 1e6;         // sampling rate of the power estimator
    double frame_s = 0.1;       // frame duration T
    double sigma2_mw = 1e-10;   // noise power at ST/SR/PR
    double ptran_mw = 1.0;      // transmit power of the protected receiver's beacon
    double theta_i_mw = 1e-11;  // interference threshold at the protected receiver
    double rho_out = 0.1;       // outage probability budget
    double rho_cont_mw = 1.0;   // hard transmit power cap at the ST
    std::int64_t n_pilot = 10;  // pilot symbols for the access channel estimate
    double gain_p = 1e-10;      // interference channel power gain |h_p|^2
    double hs_amplitude = 1e-4; // access channel amplitude (|h_s|^2 = hs_amplitude^2)
    double snr_sr_denominator_mw = 1e-10;  // interference-plus-noise power at the SR

    double hs_gain() const { return hs_amplitude * hs_amplitude; }
    // Ratio of received control-based power to noise at the ST.
    double gamma() const { return gain_p * ptran_mw / sigma2_mw; }
};

struct DerivedQuantities {
    double gamma = 0.0;          // |h_p|^2 P_tran / sigma^2
    double lambda_p = 0.0;       // n * gamma (noncentrality of the power estimate)
    double lambda_s = 0.0;       // 2 N_s |h_s|^2 / sigma^2
    std::int64_t n_samples = 0;  // round(tau * f_s), at least 2
};

// Parameter set used throughout the numerical analysis:
// f_s = 1 MHz, T = 100 ms, sigma^2 = -100 dBm, P_tran = 0 dBm,
// theta_I = -110 dBm, rho_out = 0.1, rho_cont = 0 dBm, N_s = 10,
// |h_p|^2 = -100 dB, |h_s|^2 = -80 dB  (so gamma = 0 dB).
ScenarioParams default_scenario();

// Throws std::invalid_argument naming the offending field.
void validate(const ScenarioParams& params);

// Quantities derived for an estimation interval tau; requires
// 2/f_s <= tau < T. The sample count n = round(tau f_s) is what every
// analytic formula and simulation uses in place of tau f_s.
DerivedQuantities derive(const ScenarioParams& params, double tau_s);

}  // namespace underlay
