#pragma once

#include <cmath>
#include <cstdint>

#include "mzop/errors.hpp"

namespace mzop {

/// Identifies a reproducible random stream: the same (seed, stream_id) pair
/// yields the same sample sequence regardless of platform or thread schedule.
/// stream_id is normally the ensemble-member index.
struct RngState {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// PCG32 (pcg_setseq_64_xsh_rr_32, O'Neill 2014). 64-bit state, per-stream
// increment; small, fast, and fully specified so results do not depend on the
// standard library's <random> internals.
class Pcg32 {
  public:
    explicit Pcg32(RngState s) {
        inc_ = (s.stream_id << 1u) | 1u;
        state_ = 0u;
        next_u32();
        state_ += s.seed;
        next_u32();
    }

    std::uint32_t next_u32() {
        std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    /// Uniform double in [0,1) with 53 random bits.
    double uniform() {
        std::uint64_t hi = next_u32();
        std::uint64_t lo = next_u32();
        std::uint64_t bits = (hi << 21) ^ (lo >> 11);  // 53 bits
        return static_cast<double>(bits) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_ = 0;
    std::uint64_t inc_ = 1;
};

/// Draws from a PCG32 stream. Gaussians use the Marsaglia polar method with
/// the spare value cached, so the draw sequence is a fixed function of the
/// stream alone.
class Rng {
  public:
    explicit Rng(RngState s) : gen_(s) {}

    double uniform() { return gen_.uniform(); }

    /// Standard normal.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * gen_.uniform() - 1.0;
            v = 2.0 * gen_.uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

    /// Rejection sampling: propose ~ N(0, sqrt(var)), accept with probability
    /// accept_prob(z) in [0,1]. Guarded by an iteration cap.
    template <class AcceptProb>
    double rejection_gaussian(double var, AcceptProb&& accept_prob, long max_iter = 1000000) {
        double sd = std::sqrt(var);
        for (long it = 0; it < max_iter; ++it) {
            double z = sd * gaussian();
            if (uniform() < accept_prob(z)) return z;
        }
        throw SamplerError("rejection sampler exceeded iteration cap");
    }

  private:
    Pcg32 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace mzop
