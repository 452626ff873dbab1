#ifndef RSFILTER_DISCRETE_HPP
#define RSFILTER_DISCRETE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include <rsfilter/error.hpp>
#include <rsfilter/fft.hpp>
#include <rsfilter/filters.hpp>
#include <rsfilter/grid.hpp>
#include <rsfilter/lineshapes.hpp>
#include <rsfilter/metrics.hpp>
#include <rsfilter/random.hpp>

namespace rsfilter {

// ---------------------------------------------------------------------------
// Transforms
//
// Forward: F_kappa = (1/P) sum_j f_j e^{-i kappa theta_j}; inverse: f_j = sum_kappa F_kappa e^{i kappa theta_j},
// P = 2N+1. Parseval reads sum |f_j|^2 = P sum |F_kappa|^2.

namespace detail {

inline std::size_t wrap(long i, std::size_t p) {
    const long r = i % static_cast<long>(p);
    return static_cast<std::size_t>(r < 0 ? r + static_cast<long>(p) : r);
}

inline void check_hermitian(const RsCoefficients& c) {
    const long n = static_cast<long>(c.grid().half_size());
    double scale = 0.0;
    for (const auto& v : c.coeffs()) {
        scale = std::max(scale, std::abs(v));
    }
    const double tol = 1e-12 * std::max(scale, std::numeric_limits<double>::min());
    if (std::abs(c.at(0).imag()) > tol) {
        throw ValidationError(fmt::format("coefficients are not Hermitian: Im F_0 = {:.3e}", c.at(0).imag()));
    }
    for (long kappa = 1; kappa <= n; ++kappa) {
        const double d = std::abs(c.at(-kappa) - std::conj(c.at(kappa)));
        if (d > tol) {
            throw ValidationError(fmt::format("coefficients are not Hermitian: |F_-{0} - conj F_{0}| = {1:.3e}", kappa, d));
        }
    }
}

inline Spectrum real_part_checked(const SampleGrid& grid, const std::vector<std::complex<double>>& values) {
    double scale = 1.0;
    for (const auto& v : values) {
        scale = std::max(scale, std::abs(v.real()));
    }
    Spectrum s(grid);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (std::abs(values[i].imag()) > 1e-10 * scale) {
            throw NumericError(fmt::format("inverse transform left an imaginary residue of {:.3e} at j={}", values[i].imag(), grid.index(i)));
        }
        s[i] = values[i].real();
    }
    return s;
}

} // namespace detail

/// Reference forward transform by direct summation, O(N^2).
[[nodiscard]] inline RsCoefficients dft_forward_direct(const Spectrum& s) {
    const auto& grid = s.grid();
    const auto p = grid.size();
    const long n = static_cast<long>(grid.half_size());
    std::vector<std::complex<double>> out(p);
    for (long kappa = -n; kappa <= n; ++kappa) {
        std::complex<double> sum = 0.0;
        for (long j = -n; j <= n; ++j) {
            // exact phase index keeps the argument in [0, 2pi)
            const double phase = numeric::two_pi * static_cast<double>(detail::wrap(kappa * j, p)) / static_cast<double>(p);
            sum += s.at(j) * std::polar(1.0, -phase);
        }
        out[grid.slot(kappa)] = sum / static_cast<double>(p);
    }
    return {grid, std::move(out)};
}

/// Reference inverse transform by direct summation; rejects non-Hermitian input.
[[nodiscard]] inline Spectrum dft_inverse_direct(const RsCoefficients& c) {
    detail::check_hermitian(c);
    const auto& grid = c.grid();
    const auto p = grid.size();
    const long n = static_cast<long>(grid.half_size());
    std::vector<std::complex<double>> out(p);
    for (long j = -n; j <= n; ++j) {
        std::complex<double> sum = 0.0;
        for (long kappa = -n; kappa <= n; ++kappa) {
            const double phase = numeric::two_pi * static_cast<double>(detail::wrap(kappa * j, p)) / static_cast<double>(p);
            sum += c.at(kappa) * std::polar(1.0, phase);
        }
        out[grid.slot(j)] = sum;
    }
    return detail::real_part_checked(grid, out);
}

/// Forward transform via FFTW. Signed index j is stored at j mod P, so no phase correction is needed.
[[nodiscard]] inline RsCoefficients dft_forward(const Spectrum& s) {
    const auto& grid = s.grid();
    const auto p = grid.size();
    const long n = static_cast<long>(grid.half_size());
    std::vector<std::complex<double>> in(p);
    std::vector<std::complex<double>> out(p);
    for (long j = -n; j <= n; ++j) {
        in[detail::wrap(j, p)] = s.at(j);
    }
    fft::forward(in, out);
    std::vector<std::complex<double>> coeffs(p);
    const double inv_p = 1.0 / static_cast<double>(p);
    for (long kappa = -n; kappa <= n; ++kappa) {
        coeffs[grid.slot(kappa)] = out[detail::wrap(kappa, p)] * inv_p;
    }
    return {grid, std::move(coeffs)};
}

/// Inverse transform via FFTW; rejects non-Hermitian input and checks the imaginary residue.
[[nodiscard]] inline Spectrum dft_inverse(const RsCoefficients& c) {
    detail::check_hermitian(c);
    const auto& grid = c.grid();
    const auto p = grid.size();
    const long n = static_cast<long>(grid.half_size());
    std::vector<std::complex<double>> in(p);
    std::vector<std::complex<double>> out(p);
    for (long kappa = -n; kappa <= n; ++kappa) {
        in[detail::wrap(kappa, p)] = c.at(kappa);
    }
    fft::backward(in, out);
    std::vector<std::complex<double>> values(p);
    for (long j = -n; j <= n; ++j) {
        values[grid.slot(j)] = out[detail::wrap(j, p)];
    }
    return detail::real_part_checked(grid, values);
}

// ---------------------------------------------------------------------------
// Filter application

/// F_kappa -> F_kappa B(kappa k_scale). k_scale defaults to the grid's frequency step, which is 1
/// for a grid in theta units.
[[nodiscard]] inline Spectrum apply_filter_rs(const Spectrum& s, const FilterSpec& spec, std::optional<double> k_scale = std::nullopt) {
    const double scale = k_scale.value_or(s.grid().k_step());
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw ValidationError(fmt::format("frequency scale must be > 0 (got {})", scale));
    }
    auto c = dft_forward(s);
    const long n = static_cast<long>(s.grid().half_size());
    for (long kappa = -n; kappa <= n; ++kappa) {
        c.at(kappa) *= transfer(spec, static_cast<double>(kappa) * scale);
    }
    // B is real and even, so F_-kappa B and conj(F_kappa) B stay conjugate; restore exact
    // symmetry lost to rounding in the forward transform.
    c.at(0) = c.at(0).real();
    for (long kappa = 1; kappa <= n; ++kappa) {
        c.at(-kappa) = std::conj(c.at(kappa));
    }
    return dft_inverse(c);
}

struct DsOptions {
    double relative_cutoff = 1e-8; ///< truncate where the kernel envelope drops below this times b(0)
    double max_periods = 64.0;     ///< never sample beyond this many grid periods from the centre
};

/// Radius beyond which the kernel envelope is below `relative_cutoff * b(0)`.
/// RA: x_o. BW: 1/(pi x) envelope. CT: (J/x^2 + J_2/x^3)/pi envelope. GH: end of the profile table.
[[nodiscard]] inline double ds_envelope_radius(const FilterSpec& spec, double relative_cutoff) {
    const double b0 = kernel(spec, 0.0);
    const double level = relative_cutoff * std::abs(b0);
    return std::visit(detail::overloaded{
                          [](const RunningAverage& p) { return p.x_o; },
                          [&](const BrickWall&) { return 1.0 / (numeric::pi * level); },
                          [&](const GaussHermite& p) { return gh_profile(p.m)->table_limit() / p.k_s; },
                          [&](const CosineTerminated& p) {
                              const double j = std::abs(p.a / p.dk * std::sin((k2_of(p) - p.k_1) / p.dk)) / numeric::pi;
                              const double j2 = (p.a + std::abs(p.a - 1.0)) / (p.dk * p.dk) / numeric::pi;
                              double x = 1.0 / k2_of(p);
                              while (j / (x * x) + j2 / (x * x * x) > level) {
                                  x *= 1.1;
                              }
                              return x;
                          },
                      },
                      spec.params());
}

/// Truncation radius actually used on `grid`: the envelope radius, capped at max_periods grid periods.
[[nodiscard]] inline double ds_truncation_radius(const FilterSpec& spec, const SampleGrid& grid, const DsOptions& opts = {}) {
    return std::min(ds_envelope_radius(spec, opts.relative_cutoff), opts.max_periods * grid.period());
}

struct SampledKernel {
    std::vector<double> weights; ///< weight at offset d = -N..N, stored at d + N
    double radius = 0.0;
    double raw_sum = 0.0;        ///< sum of dx * b before renormalization
};

/// Periodic sampled kernel: w_d = dx * sum_m b(d dx + m L) over |d dx + m L| <= radius,
/// renormalized to unit sum.
[[nodiscard]] inline SampledKernel sampled_ds_kernel(const FilterSpec& spec, const SampleGrid& grid, const DsOptions& opts = {}) {
    const Kernel b(spec);
    SampledKernel out;
    out.radius = ds_truncation_radius(spec, grid, opts);
    const long n = static_cast<long>(grid.half_size());
    const double dx = grid.dx();
    const double period = grid.period();
    out.weights.assign(grid.size(), 0.0);
    for (long d = -n; d <= n; ++d) {
        const double x0 = static_cast<double>(d) * dx;
        const auto images = static_cast<long>(std::floor((out.radius + std::abs(x0)) / period)) + 1;
        double sum = 0.0;
        for (long m = -images; m <= images; ++m) {
            const double x = x0 + static_cast<double>(m) * period;
            if (std::abs(x) <= out.radius) {
                sum += b(x);
            }
        }
        out.weights[grid.slot(d)] = dx * sum;
    }
    for (double w : out.weights) {
        out.raw_sum += w;
    }
    if (out.raw_sum == 0.0 || !std::isfinite(out.raw_sum)) {
        throw NumericError(fmt::format("sampled kernel of {} has no weight on this grid (dx = {})", describe(spec), dx));
    }
    for (double& w : out.weights) {
        w /= out.raw_sum;
    }
    return out;
}

/// Circular convolution out_j = sum_d w_d f_{j-d}, summed directly so that shifting the input
/// shifts the output exactly.
[[nodiscard]] inline Spectrum circular_convolve(const Spectrum& s, const std::vector<double>& weights) {
    const auto& grid = s.grid();
    const auto p = grid.size();
    if (weights.size() != p) {
        throw ValidationError(fmt::format("kernel has {} weights for a grid of {}", weights.size(), p));
    }
    const long n = static_cast<long>(grid.half_size());
    std::vector<long> support;
    for (long d = -n; d <= n; ++d) {
        if (weights[grid.slot(d)] != 0.0) {
            support.push_back(d);
        }
    }
    Spectrum out(grid);
    for (long j = -n; j <= n; ++j) {
        double sum = 0.0;
        for (long d : support) {
            sum += weights[grid.slot(d)] * s[detail::wrap(j - d + n, p)];
        }
        out[grid.slot(j)] = sum;
    }
    return out;
}

/// DS application: circular convolution with the sampled, renormalized kernel.
[[nodiscard]] inline Spectrum apply_filter_ds(const Spectrum& s, const FilterSpec& spec, const DsOptions& opts = {}) {
    return circular_convolve(s, sampled_ds_kernel(spec, s.grid(), opts).weights);
}

// ---------------------------------------------------------------------------
// Empirical noise transmission

enum class FilterPath { rs, ds };

struct NoiseTransmission {
    double measured_gain = 0.0;  ///< ensemble rms of filtered noise / sigma
    double theory_gain = 0.0;    ///< sqrt(sum of squared discrete weights)
    double standard_error = 0.0; ///< of measured_gain
    double continuum_gain = 0.0; ///< sqrt(dx * Int b^2 dx), the large-N limit of theory_gain
    std::size_t trials = 0;
};

/// Filters `trials` pure-noise spectra and measures the output rms relative to sigma.
///
/// The DS path uses the sampled kernel weights w_d; the RS path multiplies coefficients by
/// B(kappa k_step), i.e. weights w_d = (1/P) sum_kappa B e^{i kappa theta_d}. Either way the
/// theory gain is sqrt(sum w_d^2). Trial t draws from seed derive_seed(seed, t), and per-trial
/// results are reduced in trial order, so the result does not depend on the thread count.
[[nodiscard]] inline NoiseTransmission noise_transmission_empirical(const FilterSpec& spec, const NoiseModel& noise, std::size_t trials, const SampleGrid& grid, FilterPath path = FilterPath::ds, unsigned threads = 0) {
    noise.validate();
    detail::Violations v;
    v.require(trials >= 100, fmt::format("noise transmission needs at least 100 trials (got {})", trials));
    v.require(noise.sigma > 0.0, "noise transmission needs sigma > 0");
    v.throw_if_any();

    const auto p = grid.size();
    const long n = static_cast<long>(grid.half_size());
    // Effective multiplier per coefficient (index kappa mod P).
    std::vector<std::complex<double>> multiplier(p);
    std::vector<double> weights(p);
    if (path == FilterPath::ds) {
        const auto k = sampled_ds_kernel(spec, grid);
        std::vector<std::complex<double>> w(p);
        for (long d = -n; d <= n; ++d) {
            w[detail::wrap(d, p)] = k.weights[grid.slot(d)];
            weights[grid.slot(d)] = k.weights[grid.slot(d)];
        }
        fft::forward(w, multiplier);
    } else {
        for (long kappa = -n; kappa <= n; ++kappa) {
            multiplier[detail::wrap(kappa, p)] = transfer(spec, static_cast<double>(kappa) * grid.k_step());
        }
        std::vector<std::complex<double>> w(p);
        fft::backward(multiplier, w);
        for (long d = -n; d <= n; ++d) {
            weights[grid.slot(d)] = w[detail::wrap(d, p)].real() / static_cast<double>(p);
        }
    }

    NoiseTransmission out;
    out.trials = trials;
    double sum_w2 = 0.0;
    for (double w : weights) {
        sum_w2 += w * w;
    }
    out.theory_gain = std::sqrt(sum_w2);
    out.continuum_gain = std::sqrt(grid.dx() * noise_power_ds(spec));

    std::vector<double> mean_square(trials);
    auto work = [&](std::size_t first, std::size_t last) {
        std::vector<std::complex<double>> buf(p);
        std::vector<std::complex<double>> spec_buf(p);
        for (std::size_t t = first; t < last; ++t) {
            const std::uint64_t seed = random::derive_seed(noise.seed, t);
            for (std::size_t i = 0; i < p; ++i) {
                buf[i] = noise.sigma * random::normal_at(seed, i);
            }
            fft::forward(buf, spec_buf);
            for (std::size_t q = 0; q < p; ++q) {
                spec_buf[q] *= multiplier[q];
            }
            fft::backward(spec_buf, buf);
            double ms = 0.0;
            for (const auto& z : buf) {
                const double y = z.real() / static_cast<double>(p);
                ms += y * y;
            }
            mean_square[t] = ms / static_cast<double>(p);
        }
    };
    unsigned workers = threads != 0 ? threads : std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, trials));
    std::vector<std::thread> pool;
    const std::size_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t first = w * chunk;
        const std::size_t last = std::min(trials, first + chunk);
        if (first < last) {
            pool.emplace_back(work, first, last);
        }
    }
    for (auto& th : pool) {
        th.join();
    }

    double mean = 0.0;
    for (double m : mean_square) {
        mean += m;
    }
    mean /= static_cast<double>(trials);
    double var = 0.0;
    for (double m : mean_square) {
        var += (m - mean) * (m - mean);
    }
    var /= static_cast<double>(trials - 1);
    const double sigma2 = noise.sigma * noise.sigma;
    out.measured_gain = std::sqrt(mean / sigma2);
    // delta method: se(sqrt(m)) = se(m) / (2 sqrt(m))
    out.standard_error = std::sqrt(var / static_cast<double>(trials)) / sigma2 / (2.0 * out.measured_gain);
    return out;
}

// ---------------------------------------------------------------------------
// Reconstruction with Gibbs report

struct Reconstruction {
    Spectrum filtered;
    GibbsReport gibbs; ///< residual = filtered - original on the grid coordinates
};

/// RS-filters `s` and reports the residual against the input. The period is measured around the
/// largest input sample.
[[nodiscard]] inline Reconstruction reconstruct_with_report(const Spectrum& s, const FilterSpec& spec, std::optional<double> k_scale = std::nullopt) {
    Reconstruction r{apply_filter_rs(s, spec, k_scale), {}};
    const auto& grid = s.grid();
    const double scale = k_scale.value_or(grid.k_step());
    r.gibbs.k_c = half_transfer_frequency(spec) / scale * grid.k_step();
    r.gibbs.x.resize(grid.size());
    r.gibbs.residual.resize(grid.size());
    std::size_t centre = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        r.gibbs.x[i] = grid.x(grid.index(i));
        r.gibbs.residual[i] = r.filtered[i] - s[i];
        if (std::abs(s[i]) > std::abs(s[centre])) {
            centre = i;
        }
    }
    detail::summarize_gibbs(r.gibbs, r.gibbs.x[centre], std::abs(s[centre]));
    return r;
}

} // namespace rsfilter

#endif // RSFILTER_DISCRETE_HPP
