#include "levylab/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levylab {

namespace {

constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85u;
constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t prod = static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b);
    hi = static_cast<std::uint32_t>(prod >> 32);
    lo = static_cast<std::uint32_t>(prod);
}

}  // namespace

Philox::Philox(std::uint64_t seed, std::uint64_t stream)
    : counter_{0u, 0u, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)},
      key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      block_{0u, 0u, 0u, 0u},
      cursor_(4),
      cached_gaussian_(0.0),
      has_cached_gaussian_(false) {}

void Philox::refill() {
    std::array<std::uint32_t, 4> x = counter_;
    std::array<std::uint32_t, 2> k = key_;
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mul_hi_lo(kPhiloxM4x32A, x[0], hi0, lo0);
        mul_hi_lo(kPhiloxM4x32B, x[2], hi1, lo1);
        x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
        k[0] += kPhiloxW32A;
        k[1] += kPhiloxW32B;
    }
    block_ = x;
    // Words 0..1 form the 64-bit block counter; words 2..3 hold the stream id.
    if (++counter_[0] == 0u) ++counter_[1];
    cursor_ = 0;
}

std::uint32_t Philox::next_u32() {
    if (cursor_ >= 4) refill();
    return block_[static_cast<std::size_t>(cursor_++)];
}

std::uint64_t Philox::next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double Philox::uniform() {
    // 52 random bits plus a half-ulp offset: uniform on (0,1) strictly.
    const std::uint64_t bits = next_u64() >> 12;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

double Philox::gaussian() {
    if (has_cached_gaussian_) {
        has_cached_gaussian_ = false;
        return cached_gaussian_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_gaussian_ = radius * std::sin(angle);
    has_cached_gaussian_ = true;
    return radius * std::cos(angle);
}

double Philox::exponential() {
    return -std::log(uniform());
}

double sample_symmetric_stable(double alpha, Philox& rng) {
    if (!(alpha > 0.0) || alpha > 2.0) {
        throw std::invalid_argument("stable index must lie in (0,2]");
    }
    if (alpha == 2.0) {
        // exp(-xi^2) characteristic function, i.e. N(0,2).
        return std::numbers::sqrt2 * rng.gaussian();
    }
    const double theta = std::numbers::pi * (rng.uniform() - 0.5);
    if (alpha == 1.0) {
        return std::tan(theta);
    }
    const double e = rng.exponential();
    const double lead = std::sin(alpha * theta) / std::pow(std::cos(theta), 1.0 / alpha);
    const double rest = std::pow(std::cos((1.0 - alpha) * theta) / e, (1.0 - alpha) / alpha);
    return lead * rest;
}

double sample_positive_stable(double a, Philox& rng) {
    if (!(a > 0.0) || !(a < 1.0)) {
        throw std::invalid_argument("positive-stable index must lie in (0,1)");
    }
    const double u = std::numbers::pi * rng.uniform();
    const double e = rng.exponential();
    const double lead = std::sin(a * u) / std::pow(std::sin(u), 1.0 / a);
    const double rest = std::pow(std::sin((1.0 - a) * u) / e, (1.0 - a) / a);
    return lead * rest;
}

}  // namespace levylab
