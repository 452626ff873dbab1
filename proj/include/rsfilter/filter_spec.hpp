#ifndef RSFILTER_FILTER_SPEC_HPP
#define RSFILTER_FILTER_SPEC_HPP

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <fmt/format.h>

#include <rsfilter/error.hpp>

namespace rsfilter {

enum class Family { ra, bw, gh, ct };

[[nodiscard]] inline std::string_view to_string(Family f) noexcept {
    switch (f) {
    case Family::ra: return "ra";
    case Family::bw: return "bw";
    case Family::gh: return "gh";
    case Family::ct: return "ct";
    }
    return "?";
}

[[nodiscard]] inline std::optional<Family> parse_family(std::string_view s) noexcept {
    if (s == "ra") return Family::ra;
    if (s == "bw") return Family::bw;
    if (s == "gh") return Family::gh;
    if (s == "ct") return Family::ct;
    return std::nullopt;
}

/// Running average: rectangular DS kernel of half-width x_o.
struct RunningAverage {
    double x_o;
};

/// Brick wall: B(k) = 1 for |k| <= k_o, else 0.
struct BrickWall {
    double k_o;
};

/// Gauss–Hermite: B(k) = e^{-y^2} sum_{m=0..M} y^{2m}/m!, y = k/k_s.
struct GaussHermite {
    int m;
    double k_s;
};

/// Cosine terminated: 1 up to k_1, then a cos((k - k_1)/dk) - a + 1 down to zero at k_2.
struct CosineTerminated {
    double k_1;
    double a;
    double dk;
};

using FilterParams = std::variant<RunningAverage, BrickWall, GaussHermite, CosineTerminated>;

/// k_2 = k_1 + dk * acos(1 - 1/a), where the cosine roll-off reaches zero.
[[nodiscard]] inline double k2_of(const CosineTerminated& ct) noexcept {
    return ct.k_1 + ct.dk * std::acos(1.0 - 1.0 / ct.a);
}

/// A validated filter description. `ds_cutoff` records the DS half-width x_o the filter was
/// calibrated to (b(x_o)/b(0) = 1/2), when known.
class FilterSpec {
public:
    explicit FilterSpec(FilterParams params, std::optional<double> ds_cutoff = std::nullopt) : params_(params), ds_cutoff_(ds_cutoff) {
        if (const auto* ra = std::get_if<RunningAverage>(&params_)) {
            if (!ds_cutoff_) {
                ds_cutoff_ = ra->x_o;
            }
        }
        validate();
    }

    static FilterSpec ra(double x_o) { return FilterSpec(RunningAverage{x_o}); }
    static FilterSpec bw(double k_o, std::optional<double> x_o = std::nullopt) { return FilterSpec(BrickWall{k_o}, x_o); }
    static FilterSpec gh(int m, double k_s, std::optional<double> x_o = std::nullopt) { return FilterSpec(GaussHermite{m, k_s}, x_o); }
    static FilterSpec ct(double k_1, double a, double dk, std::optional<double> x_o = std::nullopt) { return FilterSpec(CosineTerminated{k_1, a, dk}, x_o); }

    [[nodiscard]] Family family() const noexcept { return static_cast<Family>(params_.index()); }
    [[nodiscard]] const FilterParams& params() const noexcept { return params_; }
    [[nodiscard]] std::optional<double> ds_cutoff() const noexcept { return ds_cutoff_; }

    template<typename T>
    [[nodiscard]] const T& as() const {
        return std::get<T>(params_);
    }

    /// Every range violation of `params`, empty when valid.
    static std::vector<std::string> violations(const FilterParams& params, std::optional<double> ds_cutoff = std::nullopt) {
        detail::Violations v;
        auto finite_positive = [&](double value, std::string_view name) { v.require(std::isfinite(value) && value > 0.0, fmt::format("{} must be > 0 (got {})", name, value)); };
        std::visit(
            [&](const auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, RunningAverage>) {
                    finite_positive(p.x_o, "ra x_o");
                } else if constexpr (std::is_same_v<T, BrickWall>) {
                    finite_positive(p.k_o, "bw k_o");
                } else if constexpr (std::is_same_v<T, GaussHermite>) {
                    v.require(p.m >= 1, fmt::format("gh order M must be >= 1 (got {})", p.m));
                    finite_positive(p.k_s, "gh k_s");
                } else {
                    v.require(std::isfinite(p.k_1) && p.k_1 >= 0.0, fmt::format("ct k_1 must be >= 0 (got {})", p.k_1));
                    v.require(std::isfinite(p.a) && p.a >= 0.5, fmt::format("ct steepness a must be >= 1/2 (got {})", p.a));
                    finite_positive(p.dk, "ct spread dk");
                }
            },
            params);
        if (ds_cutoff) {
            finite_positive(*ds_cutoff, "ds cutoff x_o");
        }
        return v.items();
    }

    friend bool operator==(const FilterSpec& lhs, const FilterSpec& rhs) {
        return lhs.ds_cutoff_ == rhs.ds_cutoff_ && std::visit(
                                                       [&](const auto& l) {
                                                           using T = std::decay_t<decltype(l)>;
                                                           const auto* r = std::get_if<T>(&rhs.params_);
                                                           if (r == nullptr) {
                                                               return false;
                                                           }
                                                           if constexpr (std::is_same_v<T, RunningAverage>) return l.x_o == r->x_o;
                                                           else if constexpr (std::is_same_v<T, BrickWall>) return l.k_o == r->k_o;
                                                           else if constexpr (std::is_same_v<T, GaussHermite>) return l.m == r->m && l.k_s == r->k_s;
                                                           else return l.k_1 == r->k_1 && l.a == r->a && l.dk == r->dk;
                                                       },
                                                       lhs.params_);
    }

private:
    void validate() const {
        const auto v = violations(params_, ds_cutoff_);
        if (!v.empty()) {
            throw ValidationError(v);
        }
    }

    FilterParams params_;
    std::optional<double> ds_cutoff_;
};

/// Short human-readable label, e.g. "ct(k_1=1.679, a=5, dk=0.5)".
[[nodiscard]] inline std::string describe(const FilterSpec& spec) {
    return std::visit(
        [](const auto& p) -> std::string {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, RunningAverage>) return fmt::format("ra(x_o={:.6g})", p.x_o);
            else if constexpr (std::is_same_v<T, BrickWall>) return fmt::format("bw(k_o={:.6g})", p.k_o);
            else if constexpr (std::is_same_v<T, GaussHermite>) return fmt::format("gh(M={}, k_s={:.6g})", p.m, p.k_s);
            else return fmt::format("ct(k_1={:.6g}, a={:.6g}, dk={:.6g})", p.k_1, p.a, p.dk);
        },
        spec.params());
}

// ---------------------------------------------------------------------------
// key=value serialization
//
//   family=ct
//   x_o=1
//   a=5
//   dk=0.5
//   k_1=1.6791246414768021
//   k_2=2.0008751958734443
//
// Numbers are written with 17 significant digits so a round trip is exact. k_2 is derived
// and only checked on input.

[[nodiscard]] inline std::string to_key_values(const FilterSpec& spec) {
    auto num = [](double v) { return fmt::format("{:.17g}", v); };
    std::string out = fmt::format("family={}\n", to_string(spec.family()));
    if (spec.ds_cutoff() && spec.family() != Family::ra) {
        out += fmt::format("x_o={}\n", num(*spec.ds_cutoff()));
    }
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, RunningAverage>) {
                out += fmt::format("x_o={}\n", num(p.x_o));
            } else if constexpr (std::is_same_v<T, BrickWall>) {
                out += fmt::format("k_o={}\n", num(p.k_o));
            } else if constexpr (std::is_same_v<T, GaussHermite>) {
                out += fmt::format("m={}\nk_s={}\n", p.m, num(p.k_s));
            } else {
                out += fmt::format("a={}\ndk={}\nk_1={}\nk_2={}\n", num(p.a), num(p.dk), num(p.k_1), num(k2_of(p)));
            }
        },
        spec.params());
    return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

/// Parses `key=value` entries separated by newlines or commas; '#' starts a comment.
inline std::map<std::string, std::string, std::less<>> parse_key_values(std::string_view text) {
    std::map<std::string, std::string, std::less<>> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find_first_of("\n,", pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto item = text.substr(pos, end - pos);
        if (const auto hash = item.find('#'); hash != std::string_view::npos) {
            item = item.substr(0, hash);
        }
        item = trim(item);
        if (!item.empty()) {
            const auto eq = item.find('=');
            if (eq == std::string_view::npos) {
                throw ValidationError(fmt::format("expected key=value, got '{}'", item));
            }
            out[std::string(trim(item.substr(0, eq)))] = std::string(trim(item.substr(eq + 1)));
        }
        pos = end + 1;
    }
    return out;
}

inline std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        return std::nullopt;
    }
    return v;
}

} // namespace detail

/// Inverse of to_key_values. Collects every missing or malformed key before throwing.
[[nodiscard]] inline FilterSpec parse_filter_spec(std::string_view text) {
    const auto kv = detail::parse_key_values(text);
    detail::Violations v;

    auto number = [&](std::string_view key) -> double {
        const auto it = kv.find(key);
        if (it == kv.end()) {
            v.add(fmt::format("missing key '{}'", key));
            return std::nan("");
        }
        const auto d = detail::parse_double(it->second);
        if (!d) {
            v.add(fmt::format("key '{}' is not a number: '{}'", key, it->second));
            return std::nan("");
        }
        return *d;
    };
    auto optional_number = [&](std::string_view key) -> std::optional<double> {
        if (kv.find(key) == kv.end()) {
            return std::nullopt;
        }
        return number(key);
    };

    const auto fam_it = kv.find("family");
    if (fam_it == kv.end()) {
        throw ValidationError("missing key 'family'");
    }
    const auto family = parse_family(fam_it->second);
    if (!family) {
        throw ValidationError(fmt::format("unknown filter family '{}' (expected ra, bw, gh, ct)", fam_it->second));
    }

    std::optional<FilterParams> params;
    std::optional<double> x_o = optional_number("x_o");
    switch (*family) {
    case Family::ra: params = RunningAverage{number("x_o")}; break;
    case Family::bw: params = BrickWall{number("k_o")}; break;
    case Family::gh: {
        const double m = number("m");
        if (std::isfinite(m) && m != std::floor(m)) {
            v.add(fmt::format("gh order m must be an integer (got {})", m));
        }
        params = GaussHermite{std::isfinite(m) ? static_cast<int>(m) : 0, number("k_s")};
        break;
    }
    case Family::ct: {
        CosineTerminated ct{number("k_1"), number("a"), number("dk")};
        params = ct;
        if (const auto k2 = optional_number("k_2"); k2 && v.empty() && ct.a >= 0.5) {
            const double expected = k2_of(ct);
            if (std::abs(*k2 - expected) > 1e-12 * std::max(1.0, std::abs(expected))) {
                v.add(fmt::format("k_2={} is inconsistent with k_1, a, dk (expected {:.17g})", *k2, expected));
            }
        }
        break;
    }
    }
    v.throw_if_any();
    v.append(FilterSpec::violations(*params, x_o));
    v.throw_if_any();
    return FilterSpec(*params, x_o);
}

} // namespace rsfilter

#endif // RSFILTER_FILTER_SPEC_HPP
