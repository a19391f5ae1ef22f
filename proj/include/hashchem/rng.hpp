#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>

namespace hashchem {

/// SplitMix64 output function. Used for seeding and stream derivation.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256** (Blackman & Vigna), seeded through SplitMix64.
///
/// The output sequence depends only on the seed, on every platform. Every
/// sampling routine below is written against next() so that a whole run is
/// reproducible from one 64-bit value.
class RngStream {
public:
    RngStream() : RngStream(0) {}
    explicit RngStream(std::uint64_t seed) noexcept;

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0,1) with 53 bits of resolution.
    double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on the closed range [lo, hi]. Throws PreconditionError if lo > hi.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Uniform on [0, n) for n >= 1, without modulo bias (Lemire).
    std::uint64_t below(std::uint64_t n) noexcept;

    /// Standard normal draw via the Box-Muller transform (cosine branch only).
    double standard_normal() noexcept;

    /// Isotropic displacement whose length is |z|*sigma, z standard normal.
    /// Throws PreconditionError unless sigma > 0.
    std::pair<double, double> half_normal_step(double sigma);

    const std::array<std::uint64_t, 4>& state() const noexcept { return s_; }

    friend bool operator==(const RngStream&, const RngStream&) = default;

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_{};
};

/// Child stream for one run of a batch. Pure function of its arguments.
RngStream derive_run_stream(std::uint64_t master_seed, std::uint64_t run_index) noexcept;

/// Parses a seed given as decimal or 0x-prefixed hexadecimal.
std::uint64_t parse_seed(const std::string_view text);

} // namespace hashchem
