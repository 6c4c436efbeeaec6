#pragma once

#include <array>
#include <cstdint>

namespace levylab {

// Counter-based Philox4x32-10 generator. A (seed, stream) pair addresses an
// independent sequence, so path i of a Monte Carlo run can draw from stream i
// without coordination between workers.
class Philox {
public:
    Philox(std::uint64_t seed, std::uint64_t stream);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // Uniform on the open interval (0,1); endpoints are never returned so the
    // value is always safe inside log().
    double uniform();
    // Standard normal via Box-Muller; the sine partner is cached.
    double gaussian();
    // Unit-rate exponential.
    double exponential();

private:
    void refill();

    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> block_;
    int cursor_;
    double cached_gaussian_;
    bool has_cached_gaussian_;
};

// Symmetric alpha-stable variate with E exp(i xi X) = exp(-|xi|^alpha),
// alpha in (0,2]; Chambers-Mallows-Stuck construction, Gaussian at alpha=2.
double sample_symmetric_stable(double alpha, Philox& rng);

// Positive a-stable variate with E exp(-s S) = exp(-s^a), a in (0,1);
// Kanter's construction. Used for subordinated stable sampling in d >= 2.
double sample_positive_stable(double a, Philox& rng);

}  // namespace levylab
