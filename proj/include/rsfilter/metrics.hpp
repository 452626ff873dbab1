#ifndef RSFILTER_METRICS_HPP
#define RSFILTER_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include <fmt/format.h>

#include <rsfilter/error.hpp>
#include <rsfilter/filters.hpp>
#include <rsfilter/grid.hpp>
#include <rsfilter/lineshapes.hpp>
#include <rsfilter/numeric/quadrature.hpp>
#include <rsfilter/numeric/roots.hpp>
#include <rsfilter/numeric/special.hpp>

namespace rsfilter {

// ---------------------------------------------------------------------------
// Mean-square error
//
// For a line of area A the squared transform is (A/2pi)^2 e^{-2|k|Gamma}, so
// 2pi Int |F|^2 |1-B|^2 dk = (A^2/pi) Int_0^inf e^{-2k Gamma} |1-B(k)|^2 dk.

namespace detail {

inline constexpr numeric::QuadratureOptions mse_quadrature{.abs_tol = 1e-300, .rel_tol = 1e-12, .max_panels = 50000};

/// Frequency where e^{-2k Gamma} has fallen to 1e-16.
inline double mse_k_max(double gamma) { return std::log(1e16) / (2.0 * gamma); }

inline double mse_integral(const LorentzianLine& line, const FilterSpec& spec, double k_end) {
    const auto cuts = transfer_breakpoints(spec);
    auto f = [&](double k) {
        const double d = one_minus_transfer(spec, k);
        return std::exp(-2.0 * k * line.gamma) * d * d;
    };
    return numeric::integrate(f, 0.0, k_end, cuts, mse_quadrature);
}

} // namespace detail

/// delta^2 = 2pi Int |F(k)|^2 |1 - B(k)|^2 dk for a Lorentzian line.
///
/// The integral runs numerically up to max(band edge, K) with e^{-2K Gamma} = 1e-16; beyond that
/// |1 - B| is taken as 1 and the exponential tail is added in closed form.
[[nodiscard]] inline double mse_numeric(const LorentzianLine& line, const FilterSpec& spec) {
    line.validate();
    const double k_end = std::max(band_edge(spec), detail::mse_k_max(line.gamma));
    const double tail = std::exp(-2.0 * k_end * line.gamma) / (2.0 * line.gamma);
    return line.area * line.area / numeric::pi * (detail::mse_integral(line, spec, k_end) + tail);
}

/// MSE with its information and white-noise parts, both integrated over [-K, K].
struct MseBreakdown {
    double total = 0.0;
    double info_term = 0.0;
    double noise_term = 0.0;
    double k_max = 0.0;
    std::optional<double> eta;           ///< Gamma/x_o when the spec carries its DS cutoff
    std::optional<double> analytic_ref;  ///< closed-form information MSE (RA and BW, K = infinity)
    std::optional<double> ratio_to_bw;   ///< info_term over the BW closed form at the same x_o
};

/// BW closed form for a given k_o: A^2 e^{-2 k_o Gamma}/(2 pi Gamma).
[[nodiscard]] inline double mse_bw_closed(const LorentzianLine& line, double k_o) {
    return line.area * line.area * std::exp(-2.0 * k_o * line.gamma) / (numeric::two_pi * line.gamma);
}

/// e^{-2 z_0 eta}/(2 pi eta x_o) with z_0 the full-precision root of sinc(z) = 1/2 (unit area).
[[nodiscard]] inline double mse_bw_analytic(EtaRatio eta, double x_o) {
    detail::check_cutoff(x_o);
    const double e = eta.value();
    return std::exp(-2.0 * numeric::sinc_half_root() * e) / (numeric::two_pi * e * x_o);
}

namespace detail {

/// Int_0^inf e^{-s y} (1 - sinc y)^2 dy as sum_n d_n (2n)!/s^{2n+1}, where
/// (1 - sinc y)^2 = sum_{n>=2} d_n y^{2n}. Converges for s > 2; used for s >= 8.
inline double ra_laplace_series(double s) {
    double sum = 0.0;
    for (int n = 2; n < 200; ++n) {
        // d_n (2n)! = (-1)^n sum_{i+j=n, i,j>=1} (2n)! / ((2i+1)! (2j+1)!)
        double coeff = 0.0;
        for (int i = 1; i < n; ++i) {
            const int j = n - i;
            coeff += std::exp(std::lgamma(2.0 * n + 1.0) - std::lgamma(2.0 * i + 2.0) - std::lgamma(2.0 * j + 2.0));
        }
        const double term = ((n % 2 == 0) ? coeff : -coeff) / std::pow(s, 2 * n + 1);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) {
            break;
        }
    }
    return sum;
}

} // namespace detail

/// RA closed form (unit area):
/// (1/(pi x_o)) [1/(2 eta) - 2 atan(1/(2 eta)) - (eta/2) ln(1 + 1/eta^2) + atan(1/eta)].
/// For eta >= 4 the bracket cancels to a few digits, so the equivalent convergent series in
/// 1/eta is summed instead.
[[nodiscard]] inline double mse_ra_analytic(EtaRatio eta, double x_o) {
    detail::check_cutoff(x_o);
    const double e = eta.value();
    if (e >= 4.0) {
        return detail::ra_laplace_series(2.0 * e) / (numeric::pi * x_o);
    }
    const double bracket = 0.5 / e - 2.0 * std::atan(0.5 / e) - 0.5 * e * std::log1p(1.0 / (e * e)) + std::atan(1.0 / e);
    return bracket / (numeric::pi * x_o);
}

/// The published ratio formula with its rounded exponent 3.79:
/// e^{3.79 eta} [1 - 4 eta atan(1/(2 eta)) - eta^2 ln(1 + 1/eta^2) + 2 eta atan(1/eta)].
/// The exact quotient mse_ra_analytic/mse_bw_analytic uses 2 z_0 = 3.79099 instead; the two
/// differ by the factor e^{0.00099 eta}.
[[nodiscard]] inline double mse_ratio_ra_bw(EtaRatio eta) {
    const double e = eta.value();
    const double bracket = 1.0 - 4.0 * e * std::atan(0.5 / e) - e * e * std::log1p(1.0 / (e * e)) + 2.0 * e * std::atan(1.0 / e);
    return std::exp(3.79 * e) * bracket;
}

struct Crossover {
    EtaRatio upper; ///< root in (0.5, 1.5): BW better above it
    EtaRatio lower; ///< root in (0.1, 0.3): RA better below it
};

/// Both roots of mse_ratio_ra_bw(eta) = 1.
[[nodiscard]] inline Crossover crossover_eta() {
    auto f = [](double e) { return mse_ratio_ra_bw(EtaRatio(e)) - 1.0; };
    auto root = [&](double lo, double hi) {
        const numeric::Bracket b{lo, hi, f(lo), f(hi)};
        if (std::signbit(b.f_lo) == std::signbit(b.f_hi)) {
            throw NumericError(fmt::format("RA/BW ratio does not cross 1 on [{}, {}]", lo, hi));
        }
        return EtaRatio(numeric::solve_bracketed(f, b, 1e-14));
    };
    return {root(0.5, 1.5), root(0.1, 0.3)};
}

/// Default integration cutoff for the noise term: 2 k_N when a noise cutoff is known, else three
/// times the filter's band edge.
[[nodiscard]] inline double default_noise_k_max(const FilterSpec& spec, std::optional<double> k_n = std::nullopt) {
    if (k_n) {
        return 2.0 * *k_n;
    }
    return 3.0 * band_edge(spec);
}

/// 2pi Int_{-K}^{K} (|F|^2 + noise_density/(2pi)) |1 - B|^2 dk, split into its two parts.
/// `noise_density` is |delta f|^2 per unit x. K must be finite when noise_density > 0; with
/// K = infinity and no noise the information term equals mse_numeric.
[[nodiscard]] inline MseBreakdown mse_with_noise(const LorentzianLine& line, const FilterSpec& spec, double noise_density, double k_max) {
    line.validate();
    detail::Violations v;
    v.require(noise_density >= 0.0 && std::isfinite(noise_density), fmt::format("noise density must be >= 0 (got {})", noise_density));
    v.require(k_max > 0.0, fmt::format("integration cutoff K must be > 0 (got {})", k_max));
    v.require(std::isfinite(k_max) || noise_density == 0.0, "the white-noise term diverges without a finite integration cutoff K");
    v.throw_if_any();

    MseBreakdown out;
    out.k_max = k_max;
    if (std::isfinite(k_max)) {
        out.info_term = line.area * line.area / numeric::pi * detail::mse_integral(line, spec, k_max);
    } else {
        out.info_term = mse_numeric(line, spec);
    }
    if (noise_density > 0.0) {
        const auto cuts = transfer_breakpoints(spec);
        auto f = [&](double k) {
            const double d = one_minus_transfer(spec, k);
            return d * d;
        };
        out.noise_term = 2.0 * noise_density * numeric::integrate(f, 0.0, k_max, cuts, {.abs_tol = 1e-300, .rel_tol = 1e-12, .max_panels = 50000});
    }
    out.total = out.info_term + out.noise_term;

    if (const auto x_o = spec.ds_cutoff()) {
        out.eta = line.gamma / *x_o;
        const double bw_ref = line.area * line.area * mse_bw_analytic(EtaRatio(*out.eta), *x_o);
        out.ratio_to_bw = out.info_term / bw_ref;
    }
    if (const auto* ra = std::get_if<RunningAverage>(&spec.params())) {
        out.analytic_ref = line.area * line.area * mse_ra_analytic(EtaRatio(line.gamma / ra->x_o), ra->x_o);
    } else if (const auto* bw = std::get_if<BrickWall>(&spec.params())) {
        out.analytic_ref = mse_bw_closed(line, bw->k_o);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Noise transmission

struct NoiseReport {
    double rms_gain = 0.0; ///< sqrt(output noise power / input noise power per unit x)
    double ds_value = 0.0; ///< Int b^2 dx
    double rs_value = 0.0; ///< (1/2pi) Int B^2 dk
};

namespace detail {

inline constexpr numeric::QuadratureOptions noise_quadrature{.abs_tol = 1e-300, .rel_tol = 1e-13, .max_panels = 100000};

/// Int_0^inf sinc^2(c u) du = pi/(2c), computed as quadrature on [0, X] plus the asymptotic tail.
/// X is a multiple of pi/c, where the tail is 1/(2c^2 X) - 1/(4c^4 X^3) + 3/(4c^6 X^5) + ...
inline double sinc_squared_integral(double c) {
    const double x_end = 200.0 * numeric::pi / c;
    std::vector<double> cuts;
    for (int i = 1; i < 200; ++i) {
        cuts.push_back(i * numeric::pi / c);
    }
    auto f = [c](double u) {
        const double s = numeric::sinc(c * u);
        return s * s;
    };
    const double body = numeric::integrate(f, 0.0, x_end, cuts, noise_quadrature);
    const double cx = c * x_end;
    const double tail = (0.5 / cx - 0.25 / (cx * cx * cx) + 0.75 / (cx * cx * cx * cx * cx)) / c;
    return body + tail;
}

/// Int_0^X b(x)^2 dx for CT with X chosen so the kernel tail, bounded by
/// (J/x^2 + J_2/x^3)/pi, carries at most 1e-10 of the total; the averaged tail is added.
inline double ct_kernel_energy_half(const CosineTerminated& p, double scale) {
    const double k2 = k2_of(p);
    const double j = p.a / p.dk * std::sin((k2 - p.k_1) / p.dk);
    const double j2 = (p.a + std::abs(p.a - 1.0)) / (p.dk * p.dk);
    auto bound = [&](double x) {
        const double u = j / numeric::pi;
        const double w = j2 / numeric::pi;
        return u * u / (3.0 * x * x * x) + u * w / (2.0 * x * x * x * x) + w * w / (5.0 * x * x * x * x * x);
    };
    double x_end = 10.0 / k2;
    while (bound(x_end) > 1e-10 * scale) {
        x_end *= 1.5;
    }
    const double period = numeric::pi / k2;
    x_end = std::ceil(x_end / period) * period;
    std::vector<double> cuts;
    for (double c = period; c < x_end; c += period) {
        cuts.push_back(c);
    }
    for (double c : {1.0 / p.dk}) {
        cuts.push_back(c);
    }
    auto f = [&](double x) {
        const double b = detail::ct_kernel(p, x);
        return b * b;
    };
    // Summed per-panel roundoff grows with the number of periods.
    auto opts = noise_quadrature;
    opts.rel_tol = std::max(opts.rel_tol, 1e-16 * static_cast<double>(cuts.size()));
    opts.max_panels = std::max(opts.max_panels, 4 * cuts.size());
    const double body = numeric::integrate(f, 0.0, x_end, cuts, opts);
    const double u = j / numeric::pi;
    const double w = j2 / numeric::pi;
    return body + u * u / (6.0 * x_end * x_end * x_end) + w * w / (10.0 * std::pow(x_end, 5));
}

} // namespace detail

/// Int b^2 dx by quadrature.
[[nodiscard]] inline double noise_power_ds(const FilterSpec& spec) {
    return std::visit(detail::overloaded{
                          [](const RunningAverage& p) {
                              const double h = 0.5 / p.x_o;
                              return 2.0 * numeric::integrate([h](double) { return h * h; }, 0.0, p.x_o);
                          },
                          [](const BrickWall& p) {
                              // b = (k_o/pi) sinc(k_o x)
                              return 2.0 * (p.k_o / numeric::pi) * (p.k_o / numeric::pi) * detail::sinc_squared_integral(p.k_o);
                          },
                          [](const GaussHermite& p) {
                              // Int b^2 dx = (2 k_s/pi^2) Int_0^inf g_M(z)^2 dz, with g_M summed from the
                              // profile's quadrature rule rather than interpolated.
                              const auto profile = gh_profile(p.m);
                              const double z_end = profile->table_limit();
                              std::vector<double> cuts;
                              for (double z = 1.0; z < z_end; z += 1.0) {
                                  cuts.push_back(z);
                              }
                              auto f = [&](double z) {
                                  const double g = profile->rule_value(z);
                                  return g * g;
                              };
                              const double body = numeric::integrate(f, 0.0, z_end, cuts, {.abs_tol = 1e-300, .rel_tol = 1e-12, .max_panels = 20000});
                              return 2.0 * p.k_s / (numeric::pi * numeric::pi) * body;
                          },
                          [](const CosineTerminated& p) {
                              const double scale = (p.k_1 + p.dk) / numeric::pi;
                              return 2.0 * detail::ct_kernel_energy_half(p, scale);
                          },
                      },
                      spec.params());
}

/// (1/2pi) Int B^2 dk = (1/pi) Int_0^inf B^2 dk by quadrature.
[[nodiscard]] inline double noise_power_rs(const FilterSpec& spec) {
    if (const auto* ra = std::get_if<RunningAverage>(&spec.params())) {
        return detail::sinc_squared_integral(ra->x_o) / numeric::pi;
    }
    double k_end = band_edge(spec);
    if (const auto* gh = std::get_if<GaussHermite>(&spec.params())) {
        // Same truncation as the GH profile so both routes integrate the same function.
        k_end = gh->k_s * detail::gh_support(gh->m);
    }
    auto f = [&](double k) {
        const double b = transfer(spec, k);
        return b * b;
    };
    return numeric::integrate(f, 0.0, k_end, transfer_breakpoints(spec), detail::noise_quadrature) / numeric::pi;
}

/// Output rms noise per unit input rms (per unit x). RA and BW report their closed forms,
/// 1/(2 x_o) and k_o/pi, after checking both quadratures against them.
[[nodiscard]] inline NoiseReport noise_gain(const FilterSpec& spec) {
    NoiseReport r;
    r.ds_value = noise_power_ds(spec);
    r.rs_value = noise_power_rs(spec);
    std::optional<double> closed;
    if (const auto* ra = std::get_if<RunningAverage>(&spec.params())) {
        closed = 0.5 / ra->x_o;
    } else if (const auto* bw = std::get_if<BrickWall>(&spec.params())) {
        closed = bw->k_o / numeric::pi;
    }
    if (closed) {
        for (const double v : {r.ds_value, r.rs_value}) {
            if (std::abs(v - *closed) > 1e-9 * *closed) {
                throw NumericError(fmt::format("noise power quadrature {:.15g} disagrees with closed form {:.15g} for {}", v, *closed, describe(spec)));
            }
        }
        r.ds_value = *closed;
        r.rs_value = *closed;
    }
    r.rms_gain = std::sqrt(r.rs_value);
    return r;
}

// ---------------------------------------------------------------------------
// Noise cutoff

/// Estimated white-noise power per coefficient: median of |F_kappa|^2 over the top quarter of
/// kappa >= 0, divided by ln 2 (median of an exponential distribution is ln2 times its mean).
[[nodiscard]] inline double estimate_noise_floor(const RsCoefficients& c) {
    const long n = static_cast<long>(c.grid().half_size());
    const long first = n - std::max(1L, (n + 1) / 4) + 1;
    std::vector<double> power;
    for (long kappa = first; kappa <= n; ++kappa) {
        power.push_back(std::norm(c.at(kappa)));
    }
    auto mid = power.begin() + static_cast<std::ptrdiff_t>(power.size() / 2);
    std::nth_element(power.begin(), mid, power.end());
    double median = *mid;
    if (power.size() % 2 == 0) {
        median = 0.5 * (median + *std::max_element(power.begin(), mid));
    }
    return median / std::log(2.0);
}

struct NoiseCutoff {
    double k_n = 0.0;     ///< physical frequency of the cutoff
    long index = 0;       ///< kappa at the cutoff
    double floor = 0.0;   ///< noise power per coefficient used
    bool estimated_floor = false;
};

inline constexpr int noise_cutoff_window = 9;
inline constexpr int noise_cutoff_persistence = 3;

/// Smallest kappa beyond which the information power (window-averaged |F_kappa|^2 minus the
/// floor) stays below the floor, i.e. |F(k_N)|^2 = |delta f|^2/2pi in discrete form. With no
/// floor given it is estimated from the top quarter of the spectrum.
[[nodiscard]] inline NoiseCutoff noise_cutoff(const RsCoefficients& c, std::optional<double> noise_floor = std::nullopt) {
    NoiseCutoff out;
    out.estimated_floor = !noise_floor;
    if (noise_floor && !(*noise_floor > 0.0 && std::isfinite(*noise_floor))) {
        throw ValidationError(fmt::format("noise floor must be > 0 (got {})", *noise_floor));
    }
    out.floor = noise_floor ? *noise_floor : estimate_noise_floor(c);
    const double f0 = std::norm(c.at(0));
    const double noiseless = std::pow(64.0 * std::numeric_limits<double>::epsilon(), 2) * f0;
    if (!(out.floor > noiseless)) {
        throw NumericError("no cutoff found: spectrum is noiseless within range");
    }

    const long n = static_cast<long>(c.grid().half_size());
    const long half = noise_cutoff_window / 2;
    std::vector<double> smooth(static_cast<std::size_t>(n + 1));
    for (long kappa = 0; kappa <= n; ++kappa) {
        double sum = 0.0;
        int count = 0;
        for (long q = std::max(0L, kappa - half); q <= std::min(n, kappa + half); ++q) {
            sum += std::norm(c.at(q));
            ++count;
        }
        smooth[static_cast<std::size_t>(kappa)] = sum / count;
    }
    const long run = noise_cutoff_window * noise_cutoff_persistence;
    for (long kappa = 0; kappa + run <= n + 1; ++kappa) {
        bool below = true;
        for (long q = kappa; q < kappa + run && below; ++q) {
            below = smooth[static_cast<std::size_t>(q)] - out.floor < out.floor;
        }
        if (below) {
            if (kappa == 0) {
                throw NumericError("no cutoff found: spectrum is noise-dominated everywhere");
            }
            out.index = kappa;
            out.k_n = c.frequency(kappa);
            return out;
        }
    }
    throw NumericError("no cutoff found: information power stays above the noise floor up to the grid limit");
}

// ---------------------------------------------------------------------------
// Gibbs residual

struct GibbsReport {
    std::vector<double> x;
    std::vector<double> residual;       ///< Delta f_G at each x
    double peak_amplitude = 0.0;        ///< max |Delta f_G|
    double relative_peak = 0.0;         ///< peak_amplitude / line peak height
    double peak_location = 0.0;
    std::optional<double> period_estimate; ///< absent when the residual has fewer than two sign changes
    double k_c = 0.0;                   ///< half-transfer frequency of the filter
};

namespace detail {

/// Sign changes of y(x), located by linear interpolation, restricted to |x - centre| <= radius.
inline std::vector<double> zero_crossings(std::span<const double> x, std::span<const double> y, double centre, double radius) {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (std::abs(x[i] - centre) > radius || std::abs(x[i + 1] - centre) > radius) {
            continue;
        }
        if (y[i] == 0.0 && i > 0 && y[i - 1] != 0.0 && std::signbit(y[i - 1]) != std::signbit(y[i + 1])) {
            out.push_back(x[i]);
        } else if (y[i] != 0.0 && y[i + 1] != 0.0 && std::signbit(y[i]) != std::signbit(y[i + 1])) {
            out.push_back(x[i] - y[i] * (x[i + 1] - x[i]) / (y[i + 1] - y[i]));
        }
    }
    return out;
}

/// Fills peak, period and k_c from a sampled residual curve. The period is twice the mean
/// spacing of zero crossings within three nominal periods 2pi/k_c of `centre`.
inline void summarize_gibbs(GibbsReport& r, double centre, double line_peak) {
    r.peak_amplitude = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        if (std::abs(r.residual[i]) > r.peak_amplitude) {
            r.peak_amplitude = std::abs(r.residual[i]);
            r.peak_location = r.x[i];
        }
    }
    r.relative_peak = line_peak > 0.0 ? r.peak_amplitude / line_peak : 0.0;
    const double nominal = numeric::two_pi / r.k_c;
    const auto zc = zero_crossings(r.x, r.residual, centre, 3.0 * nominal);
    if (zc.size() >= 2) {
        r.period_estimate = 2.0 * (zc.back() - zc.front()) / static_cast<double>(zc.size() - 1);
    }
}

} // namespace detail

/// Delta f_G(x) = Int F(k)(1 - B(k)) e^{ikx} dk = (A/pi) Int_0^inf e^{-k Gamma}(1 - B) cos(k(x - centre)) dk.
/// The integral is numeric up to max(band edge, K) with e^{-K Gamma} = 1e-16 and closed-form beyond,
/// where 1 - B is taken as 1.
[[nodiscard]] inline GibbsReport gibbs_residual(const LorentzianLine& line, const FilterSpec& spec, std::span<const double> x_grid) {
    line.validate();
    if (x_grid.empty()) {
        throw ValidationError("Gibbs residual needs at least one x value");
    }
    GibbsReport r;
    r.k_c = half_transfer_frequency(spec);
    r.x.assign(x_grid.begin(), x_grid.end());
    r.residual.resize(r.x.size());
    const double g = line.gamma;
    const double k_end = std::max(band_edge(spec), 2.0 * detail::mse_k_max(g));
    auto cuts = transfer_breakpoints(spec);
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        const double u = r.x[i] - line.center;
        std::vector<double> pieces = cuts;
        if (u != 0.0) {
            const double period = numeric::pi / std::abs(u);
            const double count = std::min(20000.0, std::floor(k_end / period));
            for (double c = 1.0; c < count; c += 1.0) {
                pieces.push_back(c * period);
            }
        }
        auto f = [&](double k) { return std::exp(-k * g) * one_minus_transfer(spec, k) * std::cos(k * u); };
        const double body = numeric::integrate(f, 0.0, k_end, pieces, {.abs_tol = 1e-14 / g, .rel_tol = 1e-10, .max_panels = 100000});
        // Int_K^inf e^{-k Gamma} cos(k u) dk = Re[e^{-(Gamma - iu)K}/(Gamma - iu)]
        const std::complex<double> s(g, -u);
        const double tail = (std::exp(-s * k_end) / s).real();
        r.residual[i] = line.area / numeric::pi * (body + tail);
    }
    detail::summarize_gibbs(r, line.center, lorentzian_ds(line, line.center));
    return r;
}

/// `points` uniformly spaced x values covering four nominal periods 2pi/k_c either side of the line.
[[nodiscard]] inline std::vector<double> gibbs_grid(const LorentzianLine& line, const FilterSpec& spec, std::size_t points = 801) {
    const double half = 4.0 * numeric::two_pi / half_transfer_frequency(spec);
    std::vector<double> x(points);
    for (std::size_t i = 0; i < points; ++i) {
        x[i] = line.center - half + 2.0 * half * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return x;
}

} // namespace rsfilter

#endif // RSFILTER_METRICS_HPP
