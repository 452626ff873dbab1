#ifndef RSFILTER_GRID_HPP
#define RSFILTER_GRID_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include <rsfilter/error.hpp>
#include <rsfilter/numeric/special.hpp>

namespace rsfilter {

/// Periodic grid of 2N+1 points indexed j = -N..N.
///
/// In its natural units the grid coordinate is theta_j = 2*pi*j/(2N+1) and the reciprocal index
/// kappa is itself the frequency. A physical spacing `dx` (and the coordinate of j = 0) maps the
/// same points onto a measured axis; the frequency of index kappa is then kappa * k_step().
class SampleGrid {
public:
    explicit SampleGrid(std::size_t half_size) : SampleGrid(half_size, numeric::two_pi / static_cast<double>(2 * half_size + 1), 0.0) {}

    SampleGrid(std::size_t half_size, double dx, double x_center) : n_(half_size), dx_(dx), x_center_(x_center) {
        if (half_size == 0) {
            throw ValidationError("grid half-size N must be >= 1");
        }
        if (!(dx > 0.0) || !std::isfinite(dx)) {
            throw ValidationError(fmt::format("grid spacing must be positive and finite (got {})", dx));
        }
    }

    [[nodiscard]] std::size_t half_size() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return 2 * n_ + 1; }
    [[nodiscard]] double dx() const noexcept { return dx_; }
    [[nodiscard]] double x_center() const noexcept { return x_center_; }

    /// Storage position of signed index j.
    [[nodiscard]] std::size_t slot(long j) const noexcept { return static_cast<std::size_t>(j + static_cast<long>(n_)); }
    /// Signed index stored at position i.
    [[nodiscard]] long index(std::size_t i) const noexcept { return static_cast<long>(i) - static_cast<long>(n_); }

    [[nodiscard]] double theta(long j) const noexcept { return numeric::two_pi * static_cast<double>(j) / static_cast<double>(size()); }
    [[nodiscard]] double x(long j) const noexcept { return x_center_ + dx_ * static_cast<double>(j); }

    /// Point density of states (2N+1)/(2 pi).
    [[nodiscard]] double density() const noexcept { return static_cast<double>(size()) / numeric::two_pi; }
    /// Length of one period in physical units.
    [[nodiscard]] double period() const noexcept { return dx_ * static_cast<double>(size()); }
    /// Physical frequency spacing between adjacent reciprocal indices.
    [[nodiscard]] double k_step() const noexcept { return numeric::two_pi / period(); }

    friend bool operator==(const SampleGrid&, const SampleGrid&) = default;

private:
    std::size_t n_;
    double dx_;
    double x_center_;
};

/// Real samples f_j on a SampleGrid.
class Spectrum {
public:
    Spectrum(SampleGrid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
        if (values_.size() != grid_.size()) {
            throw ValidationError(fmt::format("spectrum has {} values but its grid holds {}", values_.size(), grid_.size()));
        }
    }

    explicit Spectrum(SampleGrid grid) : grid_(grid), values_(grid.size(), 0.0) {}

    [[nodiscard]] const SampleGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<double> values() noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    [[nodiscard]] double at(long j) const { return values_.at(grid_.slot(j)); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] double& operator[](std::size_t i) noexcept { return values_[i]; }

private:
    SampleGrid grid_;
    std::vector<double> values_;
};

/// Complex Fourier coefficients F_kappa, kappa = -N..N, of a spectrum on the same grid.
class RsCoefficients {
public:
    RsCoefficients(SampleGrid grid, std::vector<std::complex<double>> coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != grid_.size()) {
            throw ValidationError(fmt::format("coefficient set has {} entries but its grid holds {}", coeffs_.size(), grid_.size()));
        }
    }

    [[nodiscard]] const SampleGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const std::complex<double>> coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] std::span<std::complex<double>> coeffs() noexcept { return coeffs_; }

    [[nodiscard]] std::complex<double> at(long kappa) const { return coeffs_.at(grid_.slot(kappa)); }
    [[nodiscard]] std::complex<double>& at(long kappa) { return coeffs_.at(grid_.slot(kappa)); }

    /// Physical frequency of index kappa.
    [[nodiscard]] double frequency(long kappa) const noexcept { return static_cast<double>(kappa) * grid_.k_step(); }

private:
    SampleGrid grid_;
    std::vector<std::complex<double>> coeffs_;
};

} // namespace rsfilter

#endif // RSFILTER_GRID_HPP
