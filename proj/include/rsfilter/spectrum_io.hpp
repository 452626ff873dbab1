#ifndef RSFILTER_SPECTRUM_IO_HPP
#define RSFILTER_SPECTRUM_IO_HPP

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include <rsfilter/error.hpp>
#include <rsfilter/filter_spec.hpp>
#include <rsfilter/grid.hpp>

namespace rsfilter {

inline constexpr double spacing_tolerance = 1e-9;

/// Parses two whitespace-separated columns "x f" ('#' starts a comment). The x values must be
/// uniformly spaced to 1e-9 relative and their count odd, since the grid is 2N+1 points centred
/// on the middle sample. `source` names the input in diagnostics.
[[nodiscard]] inline Spectrum parse_spectrum(std::istream& in, const std::string& source) {
    std::vector<double> xs;
    std::vector<double> fs;
    std::vector<std::size_t> lines;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view body = line;
        if (const auto hash = body.find('#'); hash != std::string_view::npos) {
            body = body.substr(0, hash);
        }
        body = detail::trim(body);
        if (body.empty()) {
            continue;
        }
        std::istringstream fields{std::string(body)};
        std::string a;
        std::string b;
        std::string extra;
        fields >> a >> b;
        const auto x = detail::parse_double(a);
        const auto f = detail::parse_double(b);
        if (!x || !f || (fields >> extra)) {
            throw IoError(fmt::format("{}:{}: expected two numeric columns \"x f\", got '{}'", source, line_no, body));
        }
        if (!std::isfinite(*x) || !std::isfinite(*f)) {
            throw IoError(fmt::format("{}:{}: non-finite value", source, line_no));
        }
        xs.push_back(*x);
        fs.push_back(*f);
        lines.push_back(line_no);
    }
    if (xs.size() < 3) {
        throw IoError(fmt::format("{}: need at least 3 samples, found {}", source, xs.size()));
    }
    if (xs.size() % 2 == 0) {
        throw IoError(fmt::format("{}: sample count {} is even; the periodic grid needs 2N+1 points", source, xs.size()));
    }
    const double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    if (!(dx > 0.0)) {
        throw IoError(fmt::format("{}: x must increase (first {}, last {})", source, xs.front(), xs.back()));
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double step = xs[i] - xs[i - 1];
        if (std::abs(step - dx) > spacing_tolerance * dx) {
            throw IoError(fmt::format("{}:{}: non-uniform grid: spacing {:.17g} differs from mean spacing {:.17g} by {:.3e} relative (limit {:.0e})", source, lines[i], step, dx, std::abs(step - dx) / dx, spacing_tolerance));
        }
    }
    const std::size_t n = (xs.size() - 1) / 2;
    return {SampleGrid(n, dx, xs[n]), std::move(fs)};
}

[[nodiscard]] inline Spectrum read_spectrum(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(fmt::format("cannot open spectrum file '{}'", path.string()));
    }
    return parse_spectrum(in, path.string());
}

/// Writes "x f" rows with 17 significant digits after the given '#' header lines.
inline void write_spectrum(std::ostream& out, const Spectrum& s, const std::vector<std::string>& header = {}) {
    for (const auto& h : header) {
        out << "# " << h << '\n';
    }
    const auto& grid = s.grid();
    for (std::size_t i = 0; i < s.size(); ++i) {
        out << fmt::format("{:.17g} {:.17g}\n", grid.x(grid.index(i)), s[i]);
    }
}

inline void write_spectrum(const std::filesystem::path& path, const Spectrum& s, const std::vector<std::string>& header = {}) {
    std::ofstream out(path);
    if (!out) {
        throw IoError(fmt::format("cannot write spectrum file '{}'", path.string()));
    }
    write_spectrum(out, s, header);
    if (!out) {
        throw IoError(fmt::format("write to '{}' failed", path.string()));
    }
}

} // namespace rsfilter

#endif // RSFILTER_SPECTRUM_IO_HPP
