#ifndef RSFILTER_LINESHAPES_HPP
#define RSFILTER_LINESHAPES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <fmt/format.h>

#include <rsfilter/error.hpp>
#include <rsfilter/grid.hpp>
#include <rsfilter/numeric/special.hpp>
#include <rsfilter/random.hpp>

namespace rsfilter {

/// Lorentzian absorption line of half-width gamma (FWHM 2*gamma) and integrated area `area`.
struct LorentzianLine {
    double gamma = 1.0;
    double center = 0.0;
    double area = 1.0;

    void validate() const {
        detail::Violations v;
        v.require(gamma > 0.0 && std::isfinite(gamma), fmt::format("line half-width gamma must be > 0 (got {})", gamma));
        v.require(std::isfinite(center), "line center must be finite");
        v.require(std::isfinite(area), "line area must be finite");
        v.throw_if_any();
    }
};

/// Ratio of line half-width to filter DS half-width, gamma / x_o.
class EtaRatio {
public:
    explicit EtaRatio(double eta) : eta_(eta) {
        if (!(eta > 0.0) || !std::isfinite(eta)) {
            throw ValidationError(fmt::format("eta must be > 0 (got {})", eta));
        }
    }

    static EtaRatio from(const LorentzianLine& line, double x_o) { return EtaRatio(line.gamma / x_o); }

    [[nodiscard]] double value() const noexcept { return eta_; }

private:
    double eta_;
};

/// White noise with per-point rms `sigma`. Draws depend only on (seed, point index).
struct NoiseModel {
    double sigma = 0.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
            throw ValidationError(fmt::format("noise sigma must be >= 0 (got {})", sigma));
        }
    }
};

/// (area*gamma/pi) / ((x - center)^2 + gamma^2)
[[nodiscard]] inline double lorentzian_ds(const LorentzianLine& line, double x) {
    const double u = x - line.center;
    return line.area * line.gamma / numeric::pi / (u * u + line.gamma * line.gamma);
}

/// Fourier transform magnitude (area/2pi) e^{-|k| gamma}, with F(k) = (1/2pi) Int f(x) e^{-ikx} dx.
///
/// For an off-centre line the transform picks up the phase e^{-ik center}; only the magnitude is
/// returned because every error and noise measure here depends on |F(k)|^2 alone.
[[nodiscard]] inline double lorentzian_rs(const LorentzianLine& line, double k) {
    return line.area / numeric::two_pi * std::exp(-std::abs(k) * line.gamma);
}

/// Full complex transform including the centre phase.
[[nodiscard]] inline std::complex<double> lorentzian_rs_complex(const LorentzianLine& line, double k) {
    return lorentzian_rs(line, k) * std::polar(1.0, -k * line.center);
}

namespace detail {

inline void check_pseudo_lorentzian_args(double gamma, std::size_t n) {
    Violations v;
    v.require(gamma > 0.0 && std::isfinite(gamma), fmt::format("pseudo-Lorentzian gamma must be > 0 (got {})", gamma));
    v.require(n >= 1, "pseudo-Lorentzian grid half-size N must be >= 1");
    v.throw_if_any();
}

} // namespace detail

/// Periodic pseudo-Lorentzian from its finite coefficient sum:
/// f_j = (1/(2N+1)) (-1 + 2 Re[(1 - z^{N+1}) / (1 - z)]),  z = e^{-(gamma - i theta_j)}.
/// This is the exact sum of e^{-|kappa| gamma} e^{i kappa theta_j} over kappa = -N..N.
[[nodiscard]] inline Spectrum pseudo_lorentzian_direct(double gamma, std::size_t n) {
    detail::check_pseudo_lorentzian_args(gamma, n);
    SampleGrid grid(n);
    Spectrum s(grid);
    const double inv_p = 1.0 / static_cast<double>(grid.size());
    const auto np1 = static_cast<double>(n + 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double theta = grid.theta(grid.index(i));
        const std::complex<double> w(-gamma, theta);
        const std::complex<double> z = std::exp(w);
        const std::complex<double> zn = std::exp(np1 * w);
        s[i] = inv_p * (-1.0 + 2.0 * ((1.0 - zn) / (1.0 - z)).real());
    }
    return s;
}

/// Largest |direct - closed form| allowed by dropping z^{N+1}: 2 e^{-(N+1) gamma} / ((2N+1)(1 - e^{-gamma})).
[[nodiscard]] inline double pseudo_lorentzian_truncation_bound(double gamma, std::size_t n) {
    return 2.0 * std::exp(-static_cast<double>(n + 1) * gamma) / (static_cast<double>(2 * n + 1) * -std::expm1(-gamma));
}

/// Periodic pseudo-Lorentzian in closed form (the N -> infinity limit of the coefficient sum):
/// f_j = (1/(2N+1)) (1 - e^{-2 gamma}) / (1 + e^{-2 gamma} - 2 e^{-gamma} cos theta_j).
///
/// Each point is cross-checked against pseudo_lorentzian_direct; a deviation beyond the
/// truncation bound raises NumericError.
[[nodiscard]] inline Spectrum pseudo_lorentzian_discrete(double gamma, std::size_t n) {
    detail::check_pseudo_lorentzian_args(gamma, n);
    SampleGrid grid(n);
    Spectrum s(grid);
    const double inv_p = 1.0 / static_cast<double>(grid.size());
    const double e1 = std::exp(-gamma);
    const double num = -std::expm1(-2.0 * gamma);
    const double om = -std::expm1(-gamma); // 1 - e^{-gamma}
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double theta = grid.theta(grid.index(i));
        const double half = std::sin(0.5 * theta);
        // 1 + e^{-2g} - 2 e^{-g} cos(theta) = (1 - e^{-g})^2 + 4 e^{-g} sin^2(theta/2)
        s[i] = inv_p * num / (om * om + 4.0 * e1 * half * half);
    }

    const Spectrum direct = pseudo_lorentzian_direct(gamma, n);
    const double bound = pseudo_lorentzian_truncation_bound(gamma, n);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double slack = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(s[i]), inv_p);
        if (std::abs(s[i] - direct[i]) > bound + slack) {
            throw NumericError(fmt::format("pseudo-Lorentzian closed form deviates from the direct sum by {:.3e} at j={} (bound {:.3e})", std::abs(s[i] - direct[i]), grid.index(i), bound));
        }
    }
    return s;
}

/// Samples a Lorentzian line on the grid's physical coordinates.
[[nodiscard]] inline Spectrum sample_lorentzian(const LorentzianLine& line, const SampleGrid& grid) {
    line.validate();
    Spectrum s(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        s[i] = lorentzian_ds(line, grid.x(grid.index(i)));
    }
    return s;
}

/// Adds independent Gaussian draws of rms sigma; draw i depends only on (seed, i).
[[nodiscard]] inline Spectrum add_white_noise(const Spectrum& s, const NoiseModel& noise) {
    noise.validate();
    if (s.size() == 0) {
        throw ValidationError("cannot add noise to an empty spectrum");
    }
    Spectrum out = s;
    if (noise.sigma == 0.0) {
        return out;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += noise.sigma * random::normal_at(noise.seed, i);
    }
    return out;
}

} // namespace rsfilter

#endif // RSFILTER_LINESHAPES_HPP
