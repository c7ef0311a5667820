#pragma once

#include <cmath>
#include <cstdint>

// Deterministic splittable random streams. Each stream is keyed by
// (master_seed, stream_id, substream); simulations open one stream per
// trial, so results do not depend on how trials are partitioned across
// threads. xoshiro256++ core seeded through splitmix64 expansion.

namespace underlay {

class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t substream) {
        std::uint64_t key = splitmix(master_seed ^ 0x9e3779b97f4a7c15ULL);
        key = splitmix(key ^ stream_id);
        key = splitmix(key ^ substream);
        for (auto& word : state_) {
            key = splitmix(key);
            word = key;
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in (0, 1); never returns 0 so logs are safe.
    double next_double() {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return u > 0.0 ? u : 0x1.0p-54;
    }

    // Standard normal via Marsaglia polar, one deviate cached.
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double scale = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * scale;
        has_spare_ = true;
        return u * scale;
    }

private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace underlay
