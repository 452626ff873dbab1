#ifndef RSFILTER_FILTERS_HPP
#define RSFILTER_FILTERS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <variant>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

#include <rsfilter/error.hpp>
#include <rsfilter/filter_spec.hpp>
#include <rsfilter/numeric/quadrature.hpp>
#include <rsfilter/numeric/roots.hpp>
#include <rsfilter/numeric/special.hpp>

namespace rsfilter {

namespace detail {

template<class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template<class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// 1 - sin(t)/t without cancellation near t = 0.
inline double one_minus_sinc(double t) noexcept {
    const double t2 = t * t;
    if (std::abs(t) < 0.1) {
        return t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0 * (1.0 - t2 / 72.0)));
    }
    return 1.0 - std::sin(t) / t;
}

/// Upper end of the GH profile integral: Q(M+1, T^2) = 1e-17.
inline double gh_support(int m) { return std::sqrt(boost::math::gamma_q_inv(m + 1.0, 1e-17)); }

/// z beyond which g_M has no smooth contribution left at double precision.
inline double gh_table_limit(int m) { return 2.0 * (std::sqrt(4.0 * m + 3.0) + 8.0); }

} // namespace detail

// ---------------------------------------------------------------------------
// Transfer functions

/// B(k). Every family is even in k and B(0) = 1.
[[nodiscard]] inline double transfer(const FilterSpec& spec, double k) {
    const double ak = std::abs(k);
    return std::visit(detail::overloaded{
                          [&](const RunningAverage& p) { return numeric::sinc(ak * p.x_o); },
                          [&](const BrickWall& p) { return ak <= p.k_o ? 1.0 : 0.0; },
                          [&](const GaussHermite& p) {
                              const double y = ak / p.k_s;
                              return boost::math::gamma_q(p.m + 1.0, y * y);
                          },
                          [&](const CosineTerminated& p) {
                              if (ak <= p.k_1) return 1.0;
                              if (ak >= k2_of(p)) return 0.0;
                              return p.a * std::cos((ak - p.k_1) / p.dk) - p.a + 1.0;
                          },
                      },
                      spec.params());
}

/// 1 - B(k), evaluated without cancellation where B is close to 1.
[[nodiscard]] inline double one_minus_transfer(const FilterSpec& spec, double k) {
    const double ak = std::abs(k);
    return std::visit(detail::overloaded{
                          [&](const RunningAverage& p) { return detail::one_minus_sinc(ak * p.x_o); },
                          [&](const BrickWall& p) { return ak <= p.k_o ? 0.0 : 1.0; },
                          [&](const GaussHermite& p) {
                              const double y = ak / p.k_s;
                              return boost::math::gamma_p(p.m + 1.0, y * y);
                          },
                          [&](const CosineTerminated& p) {
                              if (ak <= p.k_1) return 0.0;
                              if (ak >= k2_of(p)) return 1.0;
                              const double s = std::sin(0.5 * (ak - p.k_1) / p.dk);
                              return 2.0 * p.a * s * s;
                          },
                      },
                      spec.params());
}

/// Frequencies where B(k) (k >= 0) has a jump or a kink; quadrature splits there.
[[nodiscard]] inline std::vector<double> transfer_breakpoints(const FilterSpec& spec) {
    return std::visit(detail::overloaded{
                          [](const RunningAverage&) { return std::vector<double>{}; },
                          [](const BrickWall& p) { return std::vector<double>{p.k_o}; },
                          [](const GaussHermite&) { return std::vector<double>{}; },
                          [](const CosineTerminated& p) { return std::vector<double>{p.k_1, k2_of(p)}; },
                      },
                      spec.params());
}

/// Frequency beyond which the filter passes (practically) nothing: k_o for BW, k_2 for CT,
/// Q = 1e-12 for GH, and the first sinc zero pi/x_o for RA (which is not band-limited).
[[nodiscard]] inline double band_edge(const FilterSpec& spec) {
    return std::visit(detail::overloaded{
                          [](const RunningAverage& p) { return numeric::pi / p.x_o; },
                          [](const BrickWall& p) { return p.k_o; },
                          [](const GaussHermite& p) { return p.k_s * std::sqrt(boost::math::gamma_q_inv(p.m + 1.0, 1e-12)); },
                          [](const CosineTerminated& p) { return k2_of(p); },
                      },
                      spec.params());
}

/// k_c with B(k_c) = 1/2.
[[nodiscard]] inline double half_transfer_frequency(const FilterSpec& spec) {
    return std::visit(detail::overloaded{
                          [](const RunningAverage& p) { return numeric::sinc_half_root() / p.x_o; },
                          [](const BrickWall& p) { return p.k_o; },
                          [](const GaussHermite& p) { return p.k_s * std::sqrt(boost::math::gamma_q_inv(p.m + 1.0, 0.5)); },
                          [](const CosineTerminated& p) { return p.k_1 + p.dk * std::acos(1.0 - 0.5 / p.a); },
                      },
                      spec.params());
}

// ---------------------------------------------------------------------------
// GH kernel profile
//
// b_GH(x) = (k_s/pi) g_M(k_s x) with g_M(z) = Int_0^T Q(M+1, t^2) cos(z t) dt. The profile g_M
// depends on M only, so one table serves every k_s.

namespace detail {

/// Endpoint terms of g_M at the support cut T: Q(M+1, T^2) and dQ/dt there.
struct GhCut {
    double t_max;
    double q;
    double dq;

    explicit GhCut(int m) : t_max(gh_support(m)), q(boost::math::gamma_q(m + 1.0, t_max * t_max)), dq(-2.0 * t_max * boost::math::gamma_p_derivative(m + 1.0, t_max * t_max)) {}

    /// g_M(z) for z beyond gh_table_limit(M): the smooth part is below e^{-z^2/4} (z^2/4)^M / M!
    /// there, so only the cut contributes. Two-term endpoint expansion.
    [[nodiscard]] double far_tail(double z) const { return q * std::sin(z * t_max) / z + dq * std::cos(z * t_max) / (z * z); }
};

} // namespace detail

/// g_M(z) by adaptive quadrature, no caching.
[[nodiscard]] inline double gh_profile_uncached(int m, double z) {
    z = std::abs(z);
    if (z > detail::gh_table_limit(m)) {
        return detail::GhCut(m).far_tail(z);
    }
    const double t_max = detail::gh_support(m);
    auto f = [m, z](double t) { return boost::math::gamma_q(m + 1.0, t * t) * std::cos(z * t); };
    // Split at the transition and keep panels under ~2 radians of oscillation.
    const double centre = std::sqrt(static_cast<double>(m + 1));
    std::vector<double> cuts{centre};
    const auto pieces = static_cast<std::size_t>(std::min(4000.0, std::ceil(std::abs(z) * t_max / 2.0)));
    for (std::size_t i = 1; i < pieces; ++i) {
        cuts.push_back(t_max * static_cast<double>(i) / static_cast<double>(pieces));
    }
    // g_M(0) is about sqrt(M + 1); the absolute target is relative to that scale.
    return numeric::integrate(f, 0.0, t_max, cuts, {.abs_tol = 1e-13 * centre, .rel_tol = 1e-12, .max_panels = 200000});
}

/// Tabulated g_M and g_M' on a uniform z grid with cubic Hermite interpolation. Beyond the table
/// only the endpoint terms of the support cut remain.
class GhProfile {
public:
    static constexpr double step = 0.002;

    explicit GhProfile(int m) : m_(m), cut_(m), t_max_(cut_.t_max), z_table_(detail::gh_table_limit(m)) {
        const auto panels = static_cast<std::size_t>(std::ceil(t_max_ * z_table_ / 2.0));
        const numeric::CompositeGaussLegendre rule(0.0, t_max_, panels);
        t_.assign(rule.nodes().begin(), rule.nodes().end());
        wq_.resize(t_.size());
        for (std::size_t i = 0; i < t_.size(); ++i) {
            wq_[i] = rule.weights()[i] * boost::math::gamma_q(m + 1.0, t_[i] * t_[i]);
        }
        rule_limit_ = 6.0 * static_cast<double>(panels) / t_max_;

        const auto n = static_cast<std::size_t>(std::ceil(z_table_ / step)) + 1;
        g_.assign(n, 0.0);
        dg_.assign(n, 0.0);
        // cos/sin(z_i t) by rotation, re-seeded exactly every 256 steps to bound drift.
        for (std::size_t q = 0; q < t_.size(); ++q) {
            const double t = t_[q];
            const double w = wq_[q];
            const double cr = std::cos(step * t);
            const double sr = std::sin(step * t);
            double c = 1.0;
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i % 256 == 0) {
                    c = std::cos(static_cast<double>(i) * step * t);
                    s = std::sin(static_cast<double>(i) * step * t);
                }
                g_[i] += w * c;
                dg_[i] -= w * t * s;
                const double c_next = c * cr - s * sr;
                s = s * cr + c * sr;
                c = c_next;
            }
        }
    }

    [[nodiscard]] int order() const noexcept { return m_; }
    [[nodiscard]] double support() const noexcept { return t_max_; }
    [[nodiscard]] double table_limit() const noexcept { return z_table_; }

    /// g_M(z) from the Gauss–Legendre rule, without interpolation.
    [[nodiscard]] double rule_value(double z) const {
        z = std::abs(z);
        if (z > z_table_) {
            return cut_.far_tail(z);
        }
        if (z > rule_limit_) {
            return gh_profile_uncached(m_, z);
        }
        double sum = 0.0;
        for (std::size_t q = 0; q < t_.size(); ++q) {
            sum += wq_[q] * std::cos(z * t_[q]);
        }
        return sum;
    }

    /// g_M(z), interpolated inside the table.
    [[nodiscard]] double operator()(double z) const {
        z = std::abs(z);
        if (z >= z_table_) {
            return rule_value(z);
        }
        const double u = z / step;
        const auto i = std::min(static_cast<std::size_t>(u), g_.size() - 2);
        const double s = u - static_cast<double>(i);
        const double s2 = s * s;
        const double s3 = s2 * s;
        const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        const double h10 = s3 - 2.0 * s2 + s;
        const double h01 = -2.0 * s3 + 3.0 * s2;
        const double h11 = s3 - s2;
        return h00 * g_[i] + h10 * step * dg_[i] + h01 * g_[i + 1] + h11 * step * dg_[i + 1];
    }

private:
    int m_;
    detail::GhCut cut_;
    double t_max_;
    double z_table_;
    double rule_limit_ = 0.0;
    std::vector<double> t_;
    std::vector<double> wq_;
    std::vector<double> g_;
    std::vector<double> dg_;
};

/// Shared profile for order M, built once. Concurrent callers for the same M wait for the
/// single build; afterwards access is read-only.
[[nodiscard]] inline std::shared_ptr<const GhProfile> gh_profile(int m) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const GhProfile>> cache;
    const std::lock_guard lock(mutex);
    auto& slot = cache[m];
    if (!slot) {
        slot = std::make_shared<const GhProfile>(m);
    }
    return slot;
}

// ---------------------------------------------------------------------------
// Kernels

namespace detail {

inline double ra_kernel(const RunningAverage& p, double x) {
    const double ax = std::abs(x);
    if (ax < p.x_o) return 0.5 / p.x_o;
    if (ax == p.x_o) return 0.25 / p.x_o;
    return 0.0;
}

inline double bw_kernel(const BrickWall& p, double x) { return p.k_o / numeric::pi * numeric::sinc(p.k_o * x); }

// b = b1 + b2 + b3, each written as c*cos(A + c*eps/2)*sinc(c*eps/2) so that x = 0 and
// x = +/-1/dk need no special handling.
inline double ct_kernel(const CosineTerminated& p, double x) {
    const double d = k2_of(p) - p.k_1;
    const double b1 = p.k_1 * numeric::sinc(p.k_1 * x) + (1.0 - p.a) * d * std::cos((p.k_1 + 0.5 * d) * x) * numeric::sinc(0.5 * d * x);
    const double e2 = x + 1.0 / p.dk;
    const double e3 = x - 1.0 / p.dk;
    const double b2 = d * std::cos(p.k_1 * x + 0.5 * d * e2) * numeric::sinc(0.5 * d * e2);
    const double b3 = d * std::cos(p.k_1 * x + 0.5 * d * e3) * numeric::sinc(0.5 * d * e3);
    return (b1 + 0.5 * p.a * (b2 + b3)) / numeric::pi;
}

} // namespace detail

/// Evaluates b(x) for one spec. For GH it holds the shared profile table, so construct once and
/// call many times.
class Kernel {
public:
    explicit Kernel(FilterSpec spec) : spec_(std::move(spec)) {
        if (const auto* gh = std::get_if<GaussHermite>(&spec_.params())) {
            profile_ = gh_profile(gh->m);
        }
    }

    [[nodiscard]] const FilterSpec& spec() const noexcept { return spec_; }

    [[nodiscard]] double operator()(double x) const {
        return std::visit(detail::overloaded{
                              [&](const RunningAverage& p) { return detail::ra_kernel(p, x); },
                              [&](const BrickWall& p) { return detail::bw_kernel(p, x); },
                              [&](const GaussHermite& p) { return p.k_s / numeric::pi * (*profile_)(p.k_s * x); },
                              [&](const CosineTerminated& p) { return detail::ct_kernel(p, x); },
                          },
                          spec_.params());
    }

private:
    FilterSpec spec_;
    std::shared_ptr<const GhProfile> profile_;
};

/// b(x); GH goes through the cached profile.
[[nodiscard]] inline double kernel(const FilterSpec& spec, double x) { return Kernel(spec)(x); }

/// b(x) with GH evaluated by direct quadrature every call.
[[nodiscard]] inline double kernel_uncached(const FilterSpec& spec, double x) {
    if (const auto* gh = std::get_if<GaussHermite>(&spec.params())) {
        return gh->k_s / numeric::pi * gh_profile_uncached(gh->m, gh->k_s * x);
    }
    return Kernel(spec)(x);
}

/// Envelope amplitude J/pi of the CT kernel tail b(x) ~ -(J/(pi x^2)) cos(k_2 x), where J is the
/// slope discontinuity of B at k_2.
[[nodiscard]] inline double ct_tail_coefficient(const CosineTerminated& p) {
    const double j = p.a / p.dk * std::sin((k2_of(p) - p.k_1) / p.dk);
    return j / numeric::pi;
}

// ---------------------------------------------------------------------------
// Calibration

struct CalibrationResult {
    FilterSpec spec;
    double x_o;
    double residual; ///< |b(x_o)/b(0) - 1/2|
};

/// No parameter value satisfies b(x_o)/b(0) = 1/2. `clamped` holds the nearest admissible spec
/// (free parameter at its lower limit) and its residual.
class CalibrationError : public NumericError {
public:
    CalibrationError(const std::string& message, std::optional<CalibrationResult> clamped) : NumericError(message), clamped_(std::move(clamped)) {}

    [[nodiscard]] const std::optional<CalibrationResult>& clamped() const noexcept { return clamped_; }

private:
    std::optional<CalibrationResult> clamped_;
};

/// Fixed parameters for the families that have them.
struct CalibrationParams {
    int m = 100;
    double a = 5.0;
    double dk = 0.5;
};

inline constexpr double calibration_tolerance = 1e-9;

namespace detail {

inline void check_cutoff(double x_o) {
    if (!(x_o > 0.0) || !std::isfinite(x_o)) {
        throw ValidationError(fmt::format("DS cutoff x_o must be > 0 (got {})", x_o));
    }
}

/// b(x_o)/b(0) for `spec`, with GH evaluated without the table.
inline double kernel_ratio(const FilterSpec& spec, double x_o) {
    if (const auto* gh = std::get_if<GaussHermite>(&spec.params())) {
        return gh_profile_uncached(gh->m, gh->k_s * x_o) / gh_profile_uncached(gh->m, 0.0);
    }
    const Kernel b(spec);
    return b(x_o) / b(0.0);
}

inline CalibrationResult finish(FilterSpec spec, double x_o) {
    const double residual = std::abs(kernel_ratio(spec, x_o) - 0.5);
    if (!(residual < calibration_tolerance)) {
        throw NumericError(fmt::format("calibration of {} reached residual {:.3e} (limit {:.0e})", describe(spec), residual, calibration_tolerance));
    }
    return {std::move(spec), x_o, residual};
}

/// Finds p in [1e-6, 1e3]/x_o with ratio(p) = 1/2; when `lower_zero` the value 0 is admissible.
template<typename Make>
CalibrationResult solve_free_parameter(Make make, double x_o, bool lower_zero, std::string_view what) {
    auto f = [&](double p) { return kernel_ratio(make(p), x_o) - 0.5; };
    const auto bracket = numeric::scan_log_bracket(f, 1e-6 / x_o, 1e3 / x_o, 24, lower_zero);
    if (!bracket) {
        std::optional<CalibrationResult> clamped;
        if (lower_zero) {
            auto spec = make(0.0);
            clamped = CalibrationResult{spec, x_o, std::abs(kernel_ratio(spec, x_o) - 0.5)};
        }
        throw CalibrationError(fmt::format("no {} in [0, 1e3/x_o] gives b(x_o)/b(0) = 1/2 for x_o = {}", what, x_o), clamped);
    }
    const double p = numeric::solve_bracketed(f, *bracket, 1e-15 / x_o);
    return finish(make(p), x_o);
}

} // namespace detail

/// RA: the half-weight convention makes b(x_o)/b(0) = 1/2 exactly.
[[nodiscard]] inline CalibrationResult calibrate_ra(double x_o) {
    detail::check_cutoff(x_o);
    return detail::finish(FilterSpec::ra(x_o), x_o);
}

/// BW: k_o x_o is the root of sinc(z) = 1/2.
[[nodiscard]] inline CalibrationResult calibrate_bw(double x_o) {
    detail::check_cutoff(x_o);
    return detail::finish(FilterSpec::bw(numeric::sinc_half_root() / x_o, x_o), x_o);
}

/// GH: solves g_M(z)/g_M(0) = 1/2 for z = k_s x_o.
[[nodiscard]] inline CalibrationResult calibrate_gh(double x_o, int m) {
    detail::check_cutoff(x_o);
    detail::Violations v;
    v.require(m >= 1, fmt::format("gh order M must be >= 1 (got {})", m));
    v.throw_if_any();
    const double g0 = gh_profile_uncached(m, 0.0);
    auto f = [&](double z) { return gh_profile_uncached(m, z) / g0 - 0.5; };
    const auto bracket = numeric::scan_log_bracket(f, 1e-6, 1e3);
    if (!bracket) {
        throw CalibrationError(fmt::format("no GH scale gives b(x_o)/b(0) = 1/2 for M = {}", m), std::nullopt);
    }
    const double z = numeric::solve_bracketed(f, *bracket, 1e-15);
    return detail::finish(FilterSpec::gh(m, z / x_o, x_o), x_o);
}

/// CT: solves for the onset k_1 with a and dk fixed. When even k_1 = 0 leaves the kernel too
/// narrow (dk too large), throws CalibrationError carrying the k_1 = 0 spec.
[[nodiscard]] inline CalibrationResult calibrate_ct(double x_o, double a, double dk) {
    detail::check_cutoff(x_o);
    detail::Violations v;
    v.append(FilterSpec::violations(CosineTerminated{0.0, a, dk}));
    v.throw_if_any();
    return detail::solve_free_parameter([&](double k1) { return FilterSpec::ct(k1, a, dk, x_o); }, x_o, true, "onset k_1");
}

/// CT with k_1 = 0: solves for the spread dk at fixed a.
[[nodiscard]] inline CalibrationResult calibrate_ct_spread(double x_o, double a) {
    detail::check_cutoff(x_o);
    detail::Violations v;
    v.append(FilterSpec::violations(CosineTerminated{0.0, a, 1.0}));
    v.throw_if_any();
    return detail::solve_free_parameter([&](double dk) { return FilterSpec::ct(0.0, a, dk, x_o); }, x_o, false, "spread dk");
}

[[nodiscard]] inline CalibrationResult calibrate(Family family, double x_o, const CalibrationParams& fixed = {}) {
    switch (family) {
    case Family::ra: return calibrate_ra(x_o);
    case Family::bw: return calibrate_bw(x_o);
    case Family::gh: return calibrate_gh(x_o, fixed.m);
    case Family::ct: return calibrate_ct(x_o, fixed.a, fixed.dk);
    }
    throw ValidationError("unknown filter family");
}

enum class SpecialCase { tukey, hann, welch_approx };

/// Tukey: a = 1/2 with caller-chosen dk and calibrated k_1. Hann: k_1 = 0, a = 1/2, dk calibrated.
/// Welch approximation: k_1 = 0, a = 1, dk calibrated.
[[nodiscard]] inline CalibrationResult special_case(SpecialCase which, double x_o, double tukey_dk = 0.5) {
    switch (which) {
    case SpecialCase::tukey: return calibrate_ct(x_o, 0.5, tukey_dk);
    case SpecialCase::hann: return calibrate_ct_spread(x_o, 0.5);
    case SpecialCase::welch_approx: return calibrate_ct_spread(x_o, 1.0);
    }
    throw ValidationError("unknown special case");
}

/// Tukey spread whose 90%-to-10% transition width equals that of GH(M) with scale k_s.
/// For a = 1/2 the roll-off is (1 + cos u)/2, so the width is dk (acos(-0.8) - acos(0.8)).
[[nodiscard]] inline double tukey_spread_matching_gh(int m, double k_s) {
    const double k90 = k_s * std::sqrt(boost::math::gamma_q_inv(m + 1.0, 0.9));
    const double k10 = k_s * std::sqrt(boost::math::gamma_q_inv(m + 1.0, 0.1));
    return (k10 - k90) / (std::acos(-0.8) - std::acos(0.8));
}

} // namespace rsfilter

#endif // RSFILTER_FILTERS_HPP
