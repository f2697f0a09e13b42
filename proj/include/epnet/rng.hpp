#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace epnet {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Folds a list of integers into one 64-bit seed. Order-sensitive.
std::uint64_t mix_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) noexcept;

/// Seeded random stream.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard, and
/// does all real-valued conversion itself so that a seed reproduces the same
/// draws on every conforming platform (std distributions are
/// implementation-defined).
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1].
    double uniform_pos() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// Standard normal variate (Box-Muller, one value per call).
    double normal();

    /// Independent child stream; does not disturb this stream's sequence.
    Rng split(std::uint64_t index) const { return Rng(mix_seed(seed_, {0x5eedULL, index})); }

    // UniformRandomBitGenerator so std::shuffle and friends accept it.
    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

/// Seed from the OS entropy source, for runs without an explicit seed.
std::uint64_t entropy_seed();

}  // namespace epnet
