#ifndef RSFILTER_NUMERIC_ROOTS_HPP
#define RSFILTER_NUMERIC_ROOTS_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <rsfilter/error.hpp>

namespace rsfilter::numeric {

struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;
};

/// Walks a log-spaced grid upward from `lo` to `hi` and returns the first sign change of `f`.
/// When `include_zero` is set the point 0 is probed before `lo`.
template<typename F>
std::optional<Bracket> scan_log_bracket(F&& f, double lo, double hi, int points_per_decade = 24, bool include_zero = false) {
    double prev_x = lo;
    double prev_f = f(lo);
    if (include_zero) {
        const double f0 = f(0.0);
        if (f0 == 0.0) {
            return Bracket{0.0, 0.0, 0.0, 0.0};
        }
        if (std::signbit(f0) != std::signbit(prev_f)) {
            return Bracket{0.0, lo, f0, prev_f};
        }
    }
    if (prev_f == 0.0) {
        return Bracket{lo, lo, 0.0, 0.0};
    }
    const double step = std::pow(10.0, 1.0 / points_per_decade);
    for (double x = lo * step; x <= hi * (1.0 + 1e-12); x *= step) {
        const double fx = f(x);
        if (fx == 0.0 || std::signbit(fx) != std::signbit(prev_f)) {
            return Bracket{prev_x, x, prev_f, fx};
        }
        prev_x = x;
        prev_f = fx;
    }
    return std::nullopt;
}

/// Refines a sign-change bracket with TOMS 748 until the bracket is narrower than
/// `x_tol` (absolute) plus a few ulps of the root.
template<typename F>
double solve_bracketed(F&& f, const Bracket& b, double x_tol = 1e-12, std::uintmax_t max_iter = 200) {
    if (b.f_lo == 0.0) {
        return b.lo;
    }
    if (b.f_hi == 0.0) {
        return b.hi;
    }
    auto tol = [x_tol](double a, double c) { return std::abs(c - a) <= x_tol + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(a); };
    std::uintmax_t iters = max_iter;
    const auto [a, c] = boost::math::tools::toms748_solve(f, b.lo, b.hi, b.f_lo, b.f_hi, tol, iters);
    if (iters >= max_iter) {
        throw NumericError("root refinement exhausted its iteration budget");
    }
    return 0.5 * (a + c);
}

} // namespace rsfilter::numeric

#endif // RSFILTER_NUMERIC_ROOTS_HPP
