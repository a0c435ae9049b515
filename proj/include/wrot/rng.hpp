#pragma once

// Deterministic randomness. Every Monte Carlo trial draws from its own
// stream, derived from (master seed, trial index) by stateless mixing, so
// batch results are bit-identical no matter how trials are scheduled
// across workers.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

namespace wrot {

struct BadDistribution : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {
inline constexpr std::uint64_t golden64 = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

/// splitmix64. Tiny, fast, and a valid UniformRandomBitGenerator.
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    constexpr result_type operator()() {
        state_ += detail::golden64;
        return detail::mix64(state_);
    }

  private:
    std::uint64_t state_;
};

/// Stream `index` of a master seed. Two mixing rounds keep streams of
/// nearby (seed, index) pairs statistically unrelated.
inline SplitMix64 derive_stream(std::uint64_t master, std::uint64_t index) {
    return SplitMix64(
        detail::mix64(master ^ detail::mix64(index + detail::golden64)));
}

/// Uniform double in [0, 1) with 53 random bits.
template <class Rng>
double uniform_double(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller on two uniforms. Hand-rolled because the
/// draw sequence must not depend on the standard library implementation.
template <class Rng>
double gaussian(Rng& rng) {
    const double u1 = 1.0 - uniform_double(rng);  // (0, 1]
    const double u2 = uniform_double(rng);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

/// Inverse-CDF draw over the weights in their given (fixed) order.
/// Weights must be a probability vector: sum within 1e-9 of one, entries
/// no lower than -1e-12 (such dust is clamped to zero before sampling).
template <class Rng>
std::size_t sample_outcome(std::span<const double> weights, Rng& rng) {
    double total = 0.0;
    for (const double w : weights) {
        if (w < -1e-12)
            throw BadDistribution("negative weight " + std::to_string(w));
        total += std::max(w, 0.0);
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw BadDistribution("weights sum to " + std::to_string(total));

    const double u = uniform_double(rng) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        acc += std::max(weights[i], 0.0);
        if (u < acc) return i;
    }
    return weights.size() - 1;
}

}  // namespace wrot
