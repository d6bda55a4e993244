#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace eigsample {

// 64-bit finalizer from SplitMix64.
std::uint64_t mix64(std::uint64_t x) noexcept;

// FNV-1a hash of a string, used to turn names into seed tags.
std::uint64_t hash_tag(std::string_view text) noexcept;

// Derives an independent stream seed from a master seed and a list of tags,
// e.g. derive_seed(master, {hash_tag("uniform"), fraction_index, trial}).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) noexcept;

// Seeded random source. All draws are derived from raw 64-bit engine output
// with fixed arithmetic, so a given seed yields the same stream on every
// platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    // Child stream that does not disturb this one.
    Rng split(std::uint64_t tag) const { return Rng(derive_seed(seed_, {tag})); }

    std::uint64_t next_u64() { return engine_(); }
    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    bool bernoulli(double p) { return uniform() < p; }
    // Uniform integer on [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound);
    // Standard normal via Box-Muller.
    double normal();
    double sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace eigsample
