#pragma once

#include <cmath>
#include <stdexcept>

// dB / dBm handling. All analytic code works in linear units (powers in
// milliwatts); conversion happens only at configuration and report
// boundaries.

namespace underlay {

struct Decibel {
    double value = 0.0;  // ratio in dB
};

struct DbmPower {
    double value = 0.0;  // power in dBm
};

inline double db_to_linear(Decibel d) {
    if (!std::isfinite(d.value)) throw std::domain_error("db_to_linear: non-finite dB value");
    return std::pow(10.0, d.value / 10.0);
}

inline Decibel linear_to_db(double ratio) {
    if (!(ratio > 0.0) || !std::isfinite(ratio))
        throw std::domain_error("linear_to_db: ratio must be positive and finite");
    return Decibel{10.0 * std::log10(ratio)};
}

inline double dbm_to_mw(DbmPower p) {
    if (!std::isfinite(p.value)) throw std::domain_error("dbm_to_mw: non-finite dBm value");
    return std::pow(10.0, p.value / 10.0);
}

inline DbmPower mw_to_dbm(double mw) {
    if (!(mw > 0.0) || !std::isfinite(mw))
        throw std::domain_error("mw_to_dbm: power must be positive and finite");
    return DbmPower{10.0 * std::log10(mw)};
}

}  // namespace underlay
