#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "cvqkd/common.hpp"

namespace cvqkd {

/// Derive an independent stream seed from a master seed and a stream id
/// (splitmix64 over the combined word).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Gaussian sampler with no state carried between draws, so that a stream
/// split at any complex-sample boundary continues identically (trace
/// concatenation equals whole-trace processing).
class GaussianSampler {
  public:
    explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

    /// One standard complex normal: independent N(0,1) real and imaginary
    /// parts. Box-Muller from exactly two uniforms.
    cplx next_complex() {
        auto [a, b] = pair();
        return {a, b};
    }

    /// One standard real normal; consumes two uniforms (second discarded).
    double next_real() { return pair().first; }

    std::mt19937_64& engine() { return rng_; }

  private:
    std::pair<double, double> pair() {
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(2.0 * pi * u2), r * std::sin(2.0 * pi * u2)};
    }
    double uniform() {
        // in (0,1]; avoids log(0)
        return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
    }
    std::mt19937_64 rng_;
};

}  // namespace cvqkd
