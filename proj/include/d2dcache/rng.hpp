#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace d2dcache {

// SplitMix64: cheap to seed, so every trial and every holder pair can own an
// independent stream derived from (master seed, indices).
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        return mix(z);
    }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

using Rng = SplitMix64;

/// Seed of the sub-stream identified by `path` below `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept
{
    std::uint64_t h = SplitMix64::mix(seed ^ 0x6a09e667f3bcc909ULL);
    for (std::uint64_t p : path)
        h = SplitMix64::mix(h ^ SplitMix64::mix(p + 0x9e3779b97f4a7c15ULL));
    return h;
}

inline Rng derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept
{
    return Rng(derive_seed(seed, path));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) noexcept
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace d2dcache
