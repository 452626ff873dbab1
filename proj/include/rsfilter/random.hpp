#ifndef RSFILTER_RANDOM_HPP
#define RSFILTER_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace rsfilter::random {

/// splitmix64 finaliser; a bijective 64-bit mixer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31U);
}

/// Deterministic child seed for stream `index` of `seed` (e.g. one Monte Carlo trial).
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Uniform in the open interval (0, 1) from the top 53 bits.
[[nodiscard]] constexpr double to_open_unit(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 11U) + 0.5) * 0x1.0p-53;
}

/// Standard normal draw that depends only on (seed, index).
[[nodiscard]] inline double normal_at(std::uint64_t seed, std::uint64_t index) noexcept {
    const std::uint64_t base = derive_seed(seed, index);
    const double u1 = to_open_unit(mix64(base));
    const double u2 = to_open_unit(mix64(base ^ 0xd1b54a32d192ed03ULL));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace rsfilter::random

#endif // RSFILTER_RANDOM_HPP
