#include "hashchem/rng.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "hashchem/error.hpp"

namespace hashchem {

RngStream::RngStream(std::uint64_t seed) noexcept {
    std::uint64_t x = seed;
    for (auto& word : s_) {
        x += 0x9E3779B97F4A7C15ULL;
        word = splitmix64_mix(x);
    }
}

std::uint64_t RngStream::below(std::uint64_t n) noexcept {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(next()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) {
        throw PreconditionError("uniform_int: lo > hi");
    }
    const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) {
        // full 64-bit range
        return static_cast<std::int64_t>(next());
    }
    return lo + static_cast<std::int64_t>(below(span));
}

double RngStream::standard_normal() noexcept {
    // 1 - u lies in (0, 1], so the logarithm is finite.
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::pair<double, double> RngStream::half_normal_step(double sigma) {
    if (!(sigma > 0.0)) {
        throw PreconditionError("half_normal_step: sigma must be > 0");
    }
    const double length = std::fabs(standard_normal()) * sigma;
    const double theta = 2.0 * std::numbers::pi * uniform01();
    return {length * std::cos(theta), length * std::sin(theta)};
}

RngStream derive_run_stream(std::uint64_t master_seed, std::uint64_t run_index) noexcept {
    const std::uint64_t child = splitmix64_mix(master_seed ^ splitmix64_mix(run_index + 0xD1B54A32D192ED03ULL));
    return RngStream(child);
}

std::uint64_t parse_seed(std::string_view text) {
    int base = 10;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        text.remove_prefix(2);
        base = 16;
    }
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value, base);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        throw ConfigError("seed", "expected a decimal or 0x-hex 64-bit integer, got '" + std::string(text) + "'");
    }
    return value;
}

} // namespace hashchem
