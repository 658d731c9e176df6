#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace matcon {

struct RngSeed {
    std::uint64_t value = 0;
};

/// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/*!
 * Counter-based generator keyed by (seed, sample index, stream).
 *
 * The k-th draw is mix64(key + k * golden), so any (sample, stream) pair can
 * be regenerated independently of every other pair and of evaluation order.
 * Streams correspond to summand positions in a model.
 */
class CounterRng {
  public:
    CounterRng(RngSeed seed, std::uint64_t sample, std::uint64_t stream) noexcept
        : key_(mix64(mix64(mix64(seed.value ^ 0x6a09e667f3bcc909ull) ^ (sample * 0x9e3779b97f4a7c15ull + 1)) ^
                     (stream * 0xd1b54a32d192ed03ull + 2))) {}

    std::uint64_t next_u64() noexcept { return mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ull); }

    /// Uniform on (0, 1].
    double uniform_open0() noexcept { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }
    /// Uniform on [0, 1).
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Rademacher sign.
    int sign() noexcept { return (next_u64() >> 63) ? 1 : -1; }

    bool bernoulli(double p) noexcept { return uniform() < p; }

    /// Standard normal by Box-Muller from two draws (cosine branch only).
    double gaussian() noexcept {
        const double u1 = uniform_open0();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::uint64_t key() const noexcept { return key_; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace matcon
