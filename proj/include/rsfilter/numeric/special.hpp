#ifndef RSFILTER_NUMERIC_SPECIAL_HPP
#define RSFILTER_NUMERIC_SPECIAL_HPP

#include <cmath>
#include <numbers>

namespace rsfilter::numeric {

/// sin(t)/t with the removable singularity filled in.
[[nodiscard]] inline double sinc(double t) noexcept {
    if (std::abs(t) < 1e-4) {
        const double t2 = t * t;
        return 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0);
    }
    return std::sin(t) / t;
}

/// (sin(base + slope * eps) - sin(base)) / eps, finite and smooth through eps = 0.
[[nodiscard]] inline double sin_difference_quotient(double base, double slope, double eps) noexcept {
    const double half = 0.5 * slope * eps;
    return slope * std::cos(base + half) * sinc(half);
}

/// (sin(p * x) - sin(q * x)) / x, finite and smooth through x = 0.
[[nodiscard]] inline double sin_difference_over_x(double p, double q, double x) noexcept {
    return (p - q) * std::cos(0.5 * (p + q) * x) * sinc(0.5 * (p - q) * x);
}

/// Root of sinc(z) = 1/2 on (0, pi): the product k_o * x_o at which a brick-wall kernel
/// falls to half its central value at x_o. Solved by Newton from a fixed start, so the
/// result is the same on every IEEE-754 platform.
[[nodiscard]] inline double sinc_half_root() noexcept {
    static const double root = [] {
        double z = 1.9;
        for (int i = 0; i < 60; ++i) {
            const double f = std::sin(z) - 0.5 * z;
            const double df = std::cos(z) - 0.5;
            const double next = z - f / df;
            if (next == z) {
                break;
            }
            z = next;
        }
        return z;
    }();
    return root;
}

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

} // namespace rsfilter::numeric

#endif // RSFILTER_NUMERIC_SPECIAL_HPP
