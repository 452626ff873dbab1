#ifndef RSFILTER_NUMERIC_QUADRATURE_HPP
#define RSFILTER_NUMERIC_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include <rsfilter/error.hpp>

namespace rsfilter::numeric {

struct QuadratureOptions {
    double abs_tol = 1e-14;
    double rel_tol = 1e-10;
    std::size_t max_panels = 20000;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0; ///< summed Gauss/Kronrod discrepancy over all panels
    std::size_t panels = 0;
    bool converged = false;
};

namespace detail {

struct Panel {
    double a;
    double b;
    double value;
    double error;

    friend bool operator<(const Panel& lhs, const Panel& rhs) { return lhs.error < rhs.error; }
};

template<typename F>
Panel gk21_panel(F& f, double a, double b) {
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 0, 0.0, &error);
    return {a, b, value, error};
}

} // namespace detail

/// Globally adaptive Gauss–Kronrod (G10/K21) on [a, b].
///
/// The interval is first split at every breakpoint that falls strictly inside it; afterwards the
/// panel with the largest error estimate is bisected until
/// `error <= max(abs_tol, rel_tol * |value|)` or the panel budget is spent. Integrands with kinks
/// or jumps must pass those locations as breakpoints.
template<typename F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, std::span<const double> breakpoints = {}, const QuadratureOptions& opts = {}) {
    QuadratureResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }

    std::vector<double> cuts{a};
    for (double p : breakpoints) {
        if (p > a && p < b && std::isfinite(p)) {
            cuts.push_back(p);
        }
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<detail::Panel> heap;
    double value = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto panel = detail::gk21_panel(f, cuts[i], cuts[i + 1]);
        value += panel.value;
        error += panel.error;
        heap.push(panel);
    }

    auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(value)); };
    while (error > target() && heap.size() < opts.max_panels) {
        const auto worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            break; // panel at floating-point resolution
        }
        heap.pop();
        const auto left = detail::gk21_panel(f, worst.a, mid);
        const auto right = detail::gk21_panel(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from the panels to shed the drift of incremental updates.
    value = 0.0;
    error = 0.0;
    out.panels = heap.size();
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    out.value = sign * value;
    out.error = error;
    out.converged = error <= target() * 1.0000001;
    return out;
}

/// As integrate_adaptive, but throws NumericError when the tolerance is not met.
template<typename F>
double integrate(F&& f, double a, double b, std::span<const double> breakpoints = {}, const QuadratureOptions& opts = {}) {
    const auto r = integrate_adaptive(f, a, b, breakpoints, opts);
    if (!r.converged) {
        throw NumericError(fmt::format("adaptive quadrature on [{}, {}] did not converge: value {:.6e}, error estimate {:.3e} after {} panels", a, b, r.value, r.error, r.panels));
    }
    return r.value;
}

/// Fixed composite Gauss–Legendre rule: `panels` equal panels of 20 nodes on [a, b].
/// Nodes and weights are materialised once so a family of integrands sharing the same
/// abscissae (an inverse transform evaluated at many x) can reuse precomputed samples.
class CompositeGaussLegendre {
public:
    CompositeGaussLegendre(double a, double b, std::size_t panels) {
        using rule = boost::math::quadrature::gauss<double, 20>;
        const auto& x = rule::abscissa();
        const auto& w = rule::weights();
        const double h = (b - a) / static_cast<double>(panels);
        for (std::size_t p = 0; p < panels; ++p) {
            const double mid = a + (static_cast<double>(p) + 0.5) * h;
            const double half = 0.5 * h;
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (x[i] == 0.0) {
                    nodes_.push_back(mid);
                    weights_.push_back(w[i] * half);
                    continue;
                }
                nodes_.push_back(mid - half * x[i]);
                weights_.push_back(w[i] * half);
                nodes_.push_back(mid + half * x[i]);
                weights_.push_back(w[i] * half);
            }
        }
    }

    [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

} // namespace rsfilter::numeric

#endif // RSFILTER_NUMERIC_QUADRATURE_HPP
