#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/chrono.h>
#include <fmt/format.h>

#include <rsfilter/rsfilter.hpp>

#ifndef RSFILTER_VERSION
#define RSFILTER_VERSION "0.0.0"
#endif

namespace rsfilter::cli {
namespace {

struct Options {
    std::string command;

    // common
    double x0 = 1.0;
    std::string family = "bw";
    int m = 100;
    double a = 5.0;
    double dk = 0.5;
    std::optional<double> k1;
    double eta = 3.0;
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 0;
    bool no_timestamp = false;

    // kernel / transfer / gibbs tables
    double xmin = -10.0;
    double xmax = 10.0;
    double kmax = 0.0; // 0: three times the widest band edge
    std::size_t points = 0; // 0: command default

    // sweep
    std::string kind = "compare";
    std::string axis = "eta";
    double eta_min = 0.05;
    double eta_max = 5.0;
    std::string m_list = "1,2,5,10,20,50,100";
    std::string dk_list = "0.2,0.5,1.0";
    std::string eta_list = "2,3,4,5";

    // noise
    std::string families = "ra,bw,gh,ct";
    std::size_t trials = 0;
    std::size_t n = 512;
    double dx = 0.05;
    double sigma = 0.1;

    // apply
    std::string in;
    std::string spec_path;
    std::string path = "rs";

    // gibbs
    std::string gammas = "0.5,1,2";
    std::string kernels;

    // bench
    std::size_t bench_points = 100000;
    std::size_t gh_points = 200;
    int runs = 5;
    int warmup = 1;
};

// ---------------------------------------------------------------------------
// helpers

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        auto t = std::string(rsfilter::detail::trim(item));
        if (!t.empty()) {
            out.push_back(t);
        }
    }
    return out;
}

std::vector<double> parse_numbers(const std::string& s, std::string_view name, rsfilter::detail::Violations& v) {
    std::vector<double> out;
    for (const auto& item : split(s)) {
        const auto d = rsfilter::detail::parse_double(item);
        if (!d) {
            v.add(fmt::format("--{}: '{}' is not a number", name, item));
            continue;
        }
        out.push_back(*d);
    }
    if (out.empty()) {
        v.add(fmt::format("--{} must list at least one value", name));
    }
    return out;
}

const std::vector<std::string>& filter_names() {
    static const std::vector<std::string> names{"ra", "bw", "gh", "ct", "tukey", "hann", "welch"};
    return names;
}

bool known_filter(const std::string& name) {
    const auto& names = filter_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::string num(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    return fmt::format("{:.10g}", v);
}

/// Runs f(i) for i in [0, count) on a few threads; results land in index order.
template<typename T, typename F>
std::vector<T> parallel_map(std::size_t count, F f) {
    std::vector<T> out(count);
    const unsigned workers = std::max(1U, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            out[i] = f(i);
        }
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                out[i] = f(i);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    return out;
}

/// Calibrates (or, for ct with an explicit k_1, just builds) the named filter.
CalibrationResult make_filter(const std::string& name, const Options& o) {
    if (name == "ra") return calibrate_ra(o.x0);
    if (name == "bw") return calibrate_bw(o.x0);
    if (name == "gh") return calibrate_gh(o.x0, o.m);
    if (name == "ct") {
        if (o.k1) {
            auto spec = FilterSpec::ct(*o.k1, o.a, o.dk, o.x0);
            const Kernel b(spec);
            const double residual = std::abs(b(o.x0) / b(0.0) - 0.5);
            return {spec, o.x0, residual};
        }
        return calibrate_ct(o.x0, o.a, o.dk);
    }
    if (name == "tukey") return special_case(SpecialCase::tukey, o.x0, o.dk);
    if (name == "hann") return special_case(SpecialCase::hann, o.x0);
    if (name == "welch") return special_case(SpecialCase::welch_approx, o.x0);
    throw ValidationError(fmt::format("unknown filter '{}'", name));
}

// ---------------------------------------------------------------------------
// output

struct Table {
    std::vector<std::string> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> run_header(const Options& o) {
    std::vector<std::string> h;
    h.push_back(fmt::format("rsfilter {} {}", RSFILTER_VERSION, o.command));
    if (!o.no_timestamp) {
        h.push_back(fmt::format("generated {:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::time(nullptr))));
    }
    h.push_back(fmt::format("x0={} family={} m={} a={} dk={} k1={} eta={} seed={}", num(o.x0), o.family, o.m, num(o.a), num(o.dk), o.k1 ? num(*o.k1) : "auto", num(o.eta), o.seed));
    return h;
}

void render(const Table& t, const Options& o, std::ostream& out) {
    const char sep = o.format == "tsv" ? '\t' : ',';
    for (const auto& line : run_header(o)) {
        out << "# " << line << '\n';
    }
    for (const auto& line : t.meta) {
        out << "# " << line << '\n';
    }
    auto row = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? std::string(1, sep) : std::string()) << cells[i];
        }
        out << '\n';
    };
    row(t.columns);
    for (const auto& r : t.rows) {
        row(r);
    }
}

void write_to(const std::string& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream f(path);
    if (!f) {
        throw IoError(fmt::format("cannot write output file '{}'", path));
    }
    body(f);
    if (!f) {
        throw IoError(fmt::format("write to '{}' failed", path));
    }
}

void emit(const Table& t, const Options& o, std::ostream& out) {
    if (o.out.empty()) {
        render(t, o, out);
    } else {
        write_to(o.out, [&](std::ostream& f) { render(t, o, f); });
    }
}

// ---------------------------------------------------------------------------
// validation

void validate(const Options& o) {
    rsfilter::detail::Violations v;
    auto positive = [&](double value, std::string_view name) { v.require(value > 0.0 && std::isfinite(value), fmt::format("--{} must be > 0 (got {})", name, value)); };
    positive(o.x0, "x0");
    v.require(o.m >= 1, fmt::format("--m must be >= 1 (got {})", o.m));
    v.require(o.a >= 0.5 && std::isfinite(o.a), fmt::format("--a must be >= 1/2 (got {})", o.a));
    positive(o.dk, "dk");
    if (o.k1) {
        v.require(*o.k1 >= 0.0 && std::isfinite(*o.k1), fmt::format("--k1 must be >= 0 (got {})", *o.k1));
    }
    positive(o.eta, "eta");
    v.require(o.format == "csv" || o.format == "tsv", fmt::format("--format must be csv or tsv (got '{}')", o.format));

    const bool single_family = o.command == "calibrate" || o.command == "apply";
    for (const auto& f : split(o.family)) {
        v.require(known_filter(f), fmt::format("--family: unknown filter '{}' (expected ra, bw, gh, ct, tukey, hann, welch)", f));
    }
    if (single_family) {
        v.require(split(o.family).size() == 1, "--family must name exactly one filter for this command");
    }

    if (o.command == "kernel" || o.command == "transfer" || o.command == "gibbs") {
        v.require(o.points == 0 || o.points >= 2, fmt::format("--points must be >= 2 (got {})", o.points));
        v.require(o.xmax > o.xmin, fmt::format("--xmax ({}) must exceed --xmin ({})", o.xmax, o.xmin));
        v.require(o.kmax >= 0.0, fmt::format("--kmax must be >= 0 (got {})", o.kmax));
    }
    if (o.command == "sweep") {
        v.require(o.kind == "ra-bw" || o.kind == "gh" || o.kind == "ct" || o.kind == "compare" || o.kind == "all", fmt::format("--kind must be ra-bw, gh, ct, compare or all (got '{}')", o.kind));
        v.require(o.axis == "eta" || o.axis == "m" || o.axis == "dk", fmt::format("--axis must be eta, m or dk (got '{}')", o.axis));
        v.require(o.axis != "m" || o.kind == "gh", "--axis m applies to --kind gh only");
        v.require(o.axis != "dk" || o.kind == "ct", "--axis dk applies to --kind ct only");
        positive(o.eta_min, "eta-min");
        v.require(o.eta_max > o.eta_min, fmt::format("--eta-max ({}) must exceed --eta-min ({})", o.eta_max, o.eta_min));
        v.require(o.points == 0 || o.points >= 2, fmt::format("--points must be >= 2 (got {})", o.points));
        for (double mv : parse_numbers(o.m_list, "m-list", v)) {
            v.require(mv >= 1 && mv == std::floor(mv), fmt::format("--m-list: orders must be integers >= 1 (got {})", mv));
        }
        for (double d : parse_numbers(o.dk_list, "dk-list", v)) {
            positive(d, "dk-list");
        }
        for (double e : parse_numbers(o.eta_list, "eta-list", v)) {
            positive(e, "eta-list");
        }
        v.require(o.kind != "all" || !o.out.empty(), "--kind all writes one file per table and needs --out <directory>");
    }
    if (o.command == "noise") {
        for (const auto& f : split(o.families)) {
            v.require(known_filter(f), fmt::format("--families: unknown filter '{}'", f));
        }
        v.require(o.trials == 0 || o.trials >= 100, fmt::format("--trials must be 0 or >= 100 (got {})", o.trials));
        v.require(o.n >= 1, "--n must be >= 1");
        positive(o.dx, "dx");
        positive(o.sigma, "sigma");
    }
    if (o.command == "apply") {
        v.require(!o.in.empty(), "--in <spectrum file> is required");
        v.require(o.path == "rs" || o.path == "ds", fmt::format("--path must be rs or ds (got '{}')", o.path));
    }
    if (o.command == "gibbs") {
        for (double g : parse_numbers(o.gammas, "gamma", v)) {
            positive(g, "gamma");
        }
    }
    if (o.command == "bench") {
        v.require(o.bench_points >= 1, "--bench-points must be >= 1");
        v.require(o.gh_points >= 1, "--gh-points must be >= 1");
        v.require(o.runs >= 1, fmt::format("--runs must be >= 1 (got {})", o.runs));
        v.require(o.warmup >= 0, fmt::format("--warmup must be >= 0 (got {})", o.warmup));
    }
    v.throw_if_any();
}

// ---------------------------------------------------------------------------
// commands

int cmd_calibrate(const Options& o, std::ostream& out) {
    const auto r = make_filter(o.family, o);
    const LorentzianLine line{o.eta * o.x0, 0.0, 1.0};
    const auto noise = noise_gain(r.spec);
    const double mse = mse_numeric(line, r.spec);
    const double bw = mse_bw_analytic(EtaRatio(o.eta), o.x0);

    std::ostringstream body;
    for (const auto& h : run_header(o)) {
        body << "# " << h << '\n';
    }
    body << fmt::format("# filter {}\n", describe(r.spec));
    body << fmt::format("# residual |b(x_o)/b(0) - 1/2| = {:.3e}\n", r.residual);
    body << fmt::format("# half-transfer frequency k_c = {:.10g}\n", half_transfer_frequency(r.spec));
    body << fmt::format("# rms noise gain = {:.10g} (times sqrt(x_o): {:.6g})\n", noise.rms_gain, noise.rms_gain * std::sqrt(o.x0));
    body << fmt::format("# MSE at eta = {}: {:.10g} (ratio to BW {:.6g})\n", num(o.eta), mse, mse / bw);
    body << to_key_values(r.spec);
    if (o.out.empty()) {
        out << body.str();
    } else {
        write_to(o.out, [&](std::ostream& f) { f << body.str(); });
    }
    return exit_ok;
}

double widest_band_edge(const std::vector<CalibrationResult>& filters) {
    double k = 0.0;
    for (const auto& f : filters) {
        k = std::max(k, band_edge(f.spec));
    }
    return k;
}

int cmd_kernel(const Options& o, std::ostream& out) {
    const auto names = split(o.family);
    std::vector<CalibrationResult> filters;
    Table t;
    t.columns.push_back("x");
    for (const auto& n : names) {
        filters.push_back(make_filter(n, o));
        t.meta.push_back(fmt::format("{}: {}", n, describe(filters.back().spec)));
        t.columns.push_back("b_" + n);
    }
    std::vector<Kernel> kernels;
    for (const auto& f : filters) {
        kernels.emplace_back(f.spec);
    }
    const std::size_t points = o.points ? o.points : 2001;
    for (std::size_t i = 0; i < points; ++i) {
        const double x = o.xmin + (o.xmax - o.xmin) * static_cast<double>(i) / static_cast<double>(points - 1);
        std::vector<std::string> row{num(x)};
        for (const auto& b : kernels) {
            row.push_back(num(b(x)));
        }
        t.rows.push_back(std::move(row));
    }
    emit(t, o, out);
    return exit_ok;
}

int cmd_transfer(const Options& o, std::ostream& out) {
    const auto names = split(o.family);
    std::vector<CalibrationResult> filters;
    Table t;
    t.columns.push_back("k");
    for (const auto& n : names) {
        filters.push_back(make_filter(n, o));
        t.meta.push_back(fmt::format("{}: {}", n, describe(filters.back().spec)));
        t.columns.push_back("B_" + n);
    }
    const double kmax = o.kmax > 0.0 ? o.kmax : 3.0 * widest_band_edge(filters);
    const std::size_t points = o.points ? o.points : 1001;
    for (std::size_t i = 0; i < points; ++i) {
        const double k = kmax * static_cast<double>(i) / static_cast<double>(points - 1);
        std::vector<std::string> row{num(k)};
        for (const auto& f : filters) {
            row.push_back(num(transfer(f.spec, k)));
        }
        t.rows.push_back(std::move(row));
    }
    emit(t, o, out);
    return exit_ok;
}

// --- sweep

struct SweepColumn {
    std::string name;
    std::function<double(double eta)> value;
};

/// MSE of `spec` for a unit-area line with Gamma = eta x_o, relative to the BW closed form.
double bw_ratio(const FilterSpec& spec, double eta, double x0) {
    return mse_numeric(LorentzianLine{eta * x0, 0.0, 1.0}, spec) / mse_bw_analytic(EtaRatio(eta), x0);
}

Table eta_table(const std::vector<double>& etas, const std::vector<SweepColumn>& cols, std::size_t& failures) {
    Table t;
    t.columns.push_back("eta");
    for (const auto& c : cols) {
        t.columns.push_back(c.name);
    }
    auto rows = parallel_map<std::vector<std::string>>(etas.size(), [&](std::size_t i) {
        std::vector<std::string> row{num(etas[i])};
        for (const auto& c : cols) {
            try {
                row.push_back(num(c.value(etas[i])));
            } catch (const rsfilter::Error&) {
                row.push_back("nan");
            }
        }
        return row;
    });
    for (auto& r : rows) {
        failures += static_cast<std::size_t>(std::count(r.begin(), r.end(), "nan"));
        t.rows.push_back(std::move(r));
    }
    return t;
}

std::vector<double> eta_grid(const Options& o) {
    const std::size_t points = o.points ? o.points : 100;
    std::vector<double> etas(points);
    for (std::size_t i = 0; i < points; ++i) {
        etas[i] = o.eta_min + (o.eta_max - o.eta_min) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return etas;
}

Table sweep_ra_bw(const Options& o, std::size_t& failures) {
    const double x0 = o.x0;
    std::vector<SweepColumn> cols{
        {"ratio_published", [](double e) { return mse_ratio_ra_bw(EtaRatio(e)); }},
        {"ratio_exact", [x0](double e) { return mse_ra_analytic(EtaRatio(e), x0) / mse_bw_analytic(EtaRatio(e), x0); }},
        {"mse_ra", [x0](double e) { return mse_ra_analytic(EtaRatio(e), x0); }},
        {"mse_bw", [x0](double e) { return mse_bw_analytic(EtaRatio(e), x0); }},
    };
    auto t = eta_table(eta_grid(o), cols, failures);
    t.meta.push_back("MSE ratio RA/BW; ratio_published uses the rounded exponent 3.79, ratio_exact the full-precision 2 z_0");
    return t;
}

std::vector<int> m_values(const Options& o) {
    rsfilter::detail::Violations v;
    std::vector<int> out;
    for (double mv : parse_numbers(o.m_list, "m-list", v)) {
        out.push_back(static_cast<int>(mv));
    }
    return out;
}

std::vector<double> list_values(const std::string& s, std::string_view name) {
    rsfilter::detail::Violations v;
    return parse_numbers(s, name, v);
}

Table sweep_gh(const Options& o, std::size_t& failures) {
    const auto ms = m_values(o);
    std::vector<FilterSpec> specs;
    Table head;
    for (int mv : ms) {
        specs.push_back(calibrate_gh(o.x0, mv).spec);
        head.meta.push_back(describe(specs.back()));
    }
    if (o.axis == "m") {
        const auto etas = list_values(o.eta_list, "eta-list");
        Table t;
        t.meta = head.meta;
        t.meta.push_back("GH/BW MSE ratio by order M");
        t.columns.push_back("m");
        for (double e : etas) {
            t.columns.push_back(fmt::format("eta_{}", num(e)));
        }
        auto rows = parallel_map<std::vector<std::string>>(ms.size(), [&](std::size_t i) {
            std::vector<std::string> row{std::to_string(ms[i])};
            for (double e : etas) {
                try {
                    row.push_back(num(bw_ratio(specs[i], e, o.x0)));
                } catch (const rsfilter::Error&) {
                    row.push_back("nan");
                }
            }
            return row;
        });
        for (auto& r : rows) {
            failures += static_cast<std::size_t>(std::count(r.begin(), r.end(), "nan"));
            t.rows.push_back(std::move(r));
        }
        return t;
    }
    std::vector<SweepColumn> cols;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const auto spec = specs[i];
        const double x0 = o.x0;
        cols.push_back({fmt::format("gh_m{}", ms[i]), [spec, x0](double e) { return bw_ratio(spec, e, x0); }});
    }
    auto t = eta_table(eta_grid(o), cols, failures);
    t.meta = head.meta;
    t.meta.push_back("GH/BW MSE ratio");
    return t;
}

Table sweep_ct(const Options& o, std::size_t& failures) {
    const auto dks = list_values(o.dk_list, "dk-list");
    std::vector<std::optional<FilterSpec>> specs;
    Table head;
    for (double d : dks) {
        try {
            specs.emplace_back(calibrate_ct(o.x0, o.a, d).spec);
            head.meta.push_back(describe(*specs.back()));
        } catch (const CalibrationError& e) {
            specs.emplace_back(std::nullopt);
            head.meta.push_back(fmt::format("dk={}: {}", num(d), e.what()));
        }
    }
    auto ratio = [&](std::size_t i, double e) {
        if (!specs[i]) {
            throw NumericError("uncalibrated");
        }
        return bw_ratio(*specs[i], e, o.x0);
    };
    if (o.axis == "dk") {
        const auto etas = list_values(o.eta_list, "eta-list");
        Table t;
        t.meta = head.meta;
        t.meta.push_back(fmt::format("CT/BW MSE ratio by spread dk, a={}", num(o.a)));
        t.columns.push_back("dk");
        for (double e : etas) {
            t.columns.push_back(fmt::format("eta_{}", num(e)));
        }
        for (std::size_t i = 0; i < dks.size(); ++i) {
            std::vector<std::string> row{num(dks[i])};
            for (double e : etas) {
                try {
                    row.push_back(num(ratio(i, e)));
                } catch (const rsfilter::Error&) {
                    row.push_back("nan");
                    ++failures;
                }
            }
            t.rows.push_back(std::move(row));
        }
        return t;
    }
    std::vector<SweepColumn> cols;
    for (std::size_t i = 0; i < dks.size(); ++i) {
        cols.push_back({fmt::format("ct_dk{}", num(dks[i])), [&, i](double e) { return ratio(i, e); }});
    }
    auto t = eta_table(eta_grid(o), cols, failures);
    t.meta = head.meta;
    t.meta.push_back(fmt::format("CT/BW MSE ratio, a={}", num(o.a)));
    return t;
}

Table sweep_compare(const Options& o, std::size_t& failures) {
    const double x0 = o.x0;
    const auto ra = calibrate_ra(x0).spec;
    const auto gh = calibrate_gh(x0, o.m).spec;
    const auto ct = calibrate_ct(x0, o.a, o.dk).spec;
    const double tukey_dk = tukey_spread_matching_gh(o.m, gh.as<GaussHermite>().k_s);
    const auto tukey = special_case(SpecialCase::tukey, x0, tukey_dk).spec;
    const auto hann = special_case(SpecialCase::hann, x0).spec;
    const auto welch = special_case(SpecialCase::welch_approx, x0).spec;
    std::vector<SweepColumn> cols{
        {"ra", [=](double e) { return bw_ratio(ra, e, x0); }},
        {fmt::format("gh_m{}", o.m), [=](double e) { return bw_ratio(gh, e, x0); }},
        {"ct", [=](double e) { return bw_ratio(ct, e, x0); }},
        {"tukey", [=](double e) { return bw_ratio(tukey, e, x0); }},
        {"hann", [=](double e) { return bw_ratio(hann, e, x0); }},
        {"welch", [=](double e) { return bw_ratio(welch, e, x0); }},
    };
    auto t = eta_table(eta_grid(o), cols, failures);
    t.meta.push_back("MSE ratio to BW");
    for (const auto* s : {&ra, &gh, &ct, &tukey, &hann, &welch}) {
        t.meta.push_back(describe(*s));
    }
    t.meta.push_back(fmt::format("tukey dk matches the 90%-10% transition width of gh_m{}", o.m));
    return t;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
    std::size_t failures = 0;
    if (o.kind == "all") {
        std::filesystem::create_directories(o.out);
        const std::vector<std::pair<std::string, std::function<Table(const Options&, std::size_t&)>>> kinds{
            {"ra-bw", sweep_ra_bw}, {"gh", sweep_gh}, {"ct", sweep_ct}, {"compare", sweep_compare}};
        for (const auto& [name, make] : kinds) {
            Options sub = o;
            sub.kind = name;
            sub.axis = "eta";
            sub.out = (std::filesystem::path(o.out) / fmt::format("sweep_{}.{}", name, o.format)).string();
            emit(make(sub, failures), sub, out);
        }
    } else if (o.kind == "ra-bw") {
        emit(sweep_ra_bw(o, failures), o, out);
    } else if (o.kind == "gh") {
        emit(sweep_gh(o, failures), o, out);
    } else if (o.kind == "ct") {
        emit(sweep_ct(o, failures), o, out);
    } else {
        emit(sweep_compare(o, failures), o, out);
    }
    if (failures > 0) {
        err << fmt::format("warning: {} sweep value(s) could not be computed and are marked nan\n", failures);
    }
    return exit_ok;
}

// --- noise

int cmd_noise(const Options& o, std::ostream& out) {
    Table t;
    t.columns = {"filter", "rms_gain", "rms_gain_sqrt_x0", "ds_value", "rs_value", "ds_rs_rel_diff"};
    if (o.trials > 0) {
        for (const char* c : {"mc_gain", "mc_theory", "mc_std_error", "mc_z"}) {
            t.columns.emplace_back(c);
        }
        t.meta.push_back(fmt::format("Monte Carlo: {} trials, N={}, dx={}, sigma={}, seed={}, DS path", o.trials, o.n, num(o.dx), num(o.sigma), o.seed));
    }
    const SampleGrid grid(o.n, o.dx, 0.0);
    for (const auto& name : split(o.families)) {
        const auto r = make_filter(name, o);
        t.meta.push_back(fmt::format("{}: {}", name, describe(r.spec)));
        const double ds = noise_power_ds(r.spec);
        const double rs = noise_power_rs(r.spec);
        const auto rep = noise_gain(r.spec);
        std::vector<std::string> row{name, num(rep.rms_gain), num(rep.rms_gain * std::sqrt(o.x0)), num(ds), num(rs), fmt::format("{:.3e}", std::abs(ds - rs) / rs)};
        if (o.trials > 0) {
            const auto mc = noise_transmission_empirical(r.spec, NoiseModel{o.sigma, o.seed}, o.trials, grid, FilterPath::ds);
            row.push_back(num(mc.measured_gain));
            row.push_back(num(mc.theory_gain));
            row.push_back(num(mc.standard_error));
            row.push_back(fmt::format("{:.3f}", (mc.measured_gain - mc.theory_gain) / mc.standard_error));
        }
        t.rows.push_back(std::move(row));
    }
    emit(t, o, out);
    return exit_ok;
}

// --- apply

int cmd_apply(const Options& o, std::ostream& out) {
    const Spectrum s = read_spectrum(o.in);
    std::optional<FilterSpec> spec;
    if (!o.spec_path.empty()) {
        std::ifstream f(o.spec_path);
        if (!f) {
            throw IoError(fmt::format("cannot open filter spec file '{}'", o.spec_path));
        }
        std::stringstream text;
        text << f.rdbuf();
        spec = parse_filter_spec(text.str());
    } else {
        spec = make_filter(o.family, o).spec;
    }
    const Spectrum filtered = o.path == "ds" ? apply_filter_ds(s, *spec) : apply_filter_rs(s, *spec);

    std::vector<std::string> header = run_header(o);
    header.push_back(fmt::format("input {} ({} points, dx={:.10g})", o.in, s.size(), s.grid().dx()));
    header.push_back(fmt::format("filter {} via {} path", describe(*spec), o.path));

    // report
    std::vector<std::string> report = header;
    const auto gain = noise_gain(*spec);
    report.push_back(fmt::format("noise gain (continuum, per unit x): {:.10g}", gain.rms_gain));
    report.push_back(fmt::format("noise gain (per sample on this grid): {:.10g}", std::sqrt(s.grid().dx()) * gain.rms_gain));
    const auto coeffs = dft_forward(s);
    try {
        const auto cut = noise_cutoff(coeffs);
        report.push_back(fmt::format("noise cutoff k_N: {:.10g} (index {}, estimated floor {:.6e})", cut.k_n, cut.index, cut.floor));
    } catch (const NumericError& e) {
        report.push_back(fmt::format("noise cutoff k_N: none ({})", e.what()));
    }
    const auto rec = reconstruct_with_report(s, *spec);
    report.push_back(fmt::format("residual peak |filtered - input|: {:.6e} at x={:.10g}", rec.gibbs.peak_amplitude, rec.gibbs.peak_location));
    report.push_back(rec.gibbs.period_estimate ? fmt::format("residual oscillation period: {:.10g} (2pi/k_c = {:.10g})", *rec.gibbs.period_estimate, numeric::two_pi / rec.gibbs.k_c)
                                               : std::string("residual oscillation period: none (fewer than two sign changes)"));

    if (o.out.empty()) {
        write_spectrum(out, filtered, header);
        for (const auto& line : report) {
            out << "# " << line << '\n';
        }
    } else {
        write_spectrum(std::filesystem::path(o.out), filtered, header);
        write_to(o.out + ".report", [&](std::ostream& f) {
            for (const auto& line : report) {
                f << line << '\n';
            }
        });
    }
    return exit_ok;
}

// --- gibbs

/// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int cmd_gibbs(const Options& o, std::ostream& out) {
    const auto spec = make_filter(split(o.family).front(), o).spec;
    const auto gammas = list_values(o.gammas, "gamma");
    Table t;
    t.columns = {"gamma", "k_c", "k_c_gamma", "peak", "relative_peak", "ln_relative_peak", "period", "nominal_period", "period_rel_err"};
    std::vector<double> kg;
    std::vector<double> ln_rel;
    std::vector<double> ln_raw;
    for (double g : gammas) {
        const LorentzianLine line{g, 0.0, 1.0};
        const auto grid = gibbs_grid(line, spec, o.points ? o.points : 1601);
        const auto r = gibbs_residual(line, spec, grid);
        const double nominal = numeric::two_pi / r.k_c;
        const double period = r.period_estimate.value_or(std::nan(""));
        t.rows.push_back({num(g), num(r.k_c), num(r.k_c * g), num(r.peak_amplitude), num(r.relative_peak), num(std::log(r.relative_peak)), num(period), num(nominal), num(period / nominal - 1.0)});
        kg.push_back(r.k_c * g);
        ln_rel.push_back(std::log(r.relative_peak));
        ln_raw.push_back(std::log(r.peak_amplitude));
    }
    t.meta.push_back(fmt::format("filter {}", describe(spec)));
    if (gammas.size() >= 2) {
        t.meta.push_back(fmt::format("slope of ln(relative_peak) vs k_c*gamma: {:.6f}", slope(kg, ln_rel)));
        t.meta.push_back(fmt::format("slope of ln(peak) vs k_c*gamma: {:.6f}", slope(kg, ln_raw)));
    }
    emit(t, o, out);

    if (!o.kernels.empty()) {
        Options k = o;
        k.out = o.kernels;
        k.family = "ra,bw,ct";
        k.command = "gibbs kernels";
        return cmd_kernel(k, out);
    }
    return exit_ok;
}

// --- bench

std::string cpu_identifier() {
    std::ifstream f("/proc/cpuinfo");
    std::string line;
    while (std::getline(f, line)) {
        if (line.rfind("model name", 0) == 0) {
            const auto colon = line.find(':');
            if (colon != std::string::npos) {
                return std::string(rsfilter::detail::trim(line.substr(colon + 1)));
            }
        }
    }
    return "unknown";
}

struct Timing {
    double median = 0.0;
    double min = 0.0;
    double max = 0.0;
};

template<typename F>
Timing time_per_eval(F f, const std::vector<double>& xs, int runs, int warmup) {
    volatile double sink = 0.0;
    auto once = [&] {
        double acc = 0.0;
        const auto t0 = std::chrono::steady_clock::now();
        for (double x : xs) {
            acc += f(x);
        }
        const auto t1 = std::chrono::steady_clock::now();
        sink = sink + acc;
        return std::chrono::duration<double, std::nano>(t1 - t0).count() / static_cast<double>(xs.size());
    };
    for (int i = 0; i < warmup; ++i) {
        once();
    }
    std::vector<double> samples;
    for (int i = 0; i < runs; ++i) {
        samples.push_back(once());
    }
    std::sort(samples.begin(), samples.end());
    return {samples[samples.size() / 2], samples.front(), samples.back()};
}

int cmd_bench(const Options& o, std::ostream& out) {
    const auto ct = calibrate_ct(o.x0, o.a, o.dk).spec;
    const auto gh = calibrate_gh(o.x0, o.m).spec;
    std::vector<double> xs(o.bench_points);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = -10.0 * o.x0 + 20.0 * o.x0 * (static_cast<double>(i) + 0.5) / static_cast<double>(xs.size());
    }
    std::vector<double> subset;
    const std::size_t stride = std::max<std::size_t>(1, xs.size() / o.gh_points);
    for (std::size_t i = 0; i < xs.size() && subset.size() < o.gh_points; i += stride) {
        subset.push_back(xs[i]);
    }

    const Kernel ct_kernel(ct);
    const Kernel gh_cached(gh); // builds the profile table before timing
    const auto t_ct = time_per_eval([&](double x) { return ct_kernel(x); }, xs, o.runs, o.warmup);
    const auto t_cached = time_per_eval([&](double x) { return gh_cached(x); }, xs, o.runs, o.warmup);
    const auto t_uncached = time_per_eval([&](double x) { return kernel_uncached(gh, x); }, subset, o.runs, std::min(o.warmup, 1));

    Table t;
    t.meta.push_back(fmt::format("cpu: {}", cpu_identifier()));
    t.meta.push_back(fmt::format("workload: kernel values on {} x-points in [-10 x0, 10 x0]; uncached GH timed on a {}-point subset", xs.size(), subset.size()));
    t.meta.push_back(fmt::format("runs={} warmup={} (median of runs)", o.runs, o.warmup));
    t.meta.push_back(describe(ct));
    t.meta.push_back(describe(gh));
    t.columns = {"method", "median_ns_per_eval", "min_ns_per_eval", "max_ns_per_eval", "spread", "relative_to_ct"};
    auto row = [&](const std::string& name, const Timing& tm) {
        t.rows.push_back({name, num(tm.median), num(tm.min), num(tm.max), fmt::format("{:.3f}", (tm.max - tm.min) / tm.median), num(tm.median / t_ct.median)});
    };
    row("ct_closed_form", t_ct);
    row(fmt::format("gh_m{}_cached", o.m), t_cached);
    row(fmt::format("gh_m{}_uncached", o.m), t_uncached);
    const double speedup = t_uncached.median / t_ct.median;
    t.meta.push_back(fmt::format("speedup ct vs uncached gh: {:.1f}x ({})", speedup, speedup >= 50.0 ? "meets 50x" : "below 50x"));
    emit(t, o, out);
    return exit_ok;
}

// ---------------------------------------------------------------------------

void add_options(CLI::App& app, Options& o) {
    app.add_option("--x0", o.x0, "DS cutoff half-width x_o")->capture_default_str();
    app.add_option("--family", o.family, "filter: ra, bw, gh, ct, tukey, hann, welch (comma list for tables)")->capture_default_str();
    app.add_option("--m", o.m, "GH order M")->capture_default_str();
    app.add_option("--a", o.a, "CT steepness a")->capture_default_str();
    app.add_option("--dk", o.dk, "CT spread dk (Tukey spread for tukey)")->capture_default_str();
    app.add_option("--k1", o.k1, "CT onset k_1 (default: calibrated)");
    app.add_option("--eta", o.eta, "eta = Gamma/x_o for single-point reports")->capture_default_str();
    app.add_option("--out", o.out, "output file (stdout if absent)");
    app.add_option("--format", o.format, "csv or tsv")->capture_default_str();
    app.add_option("--seed", o.seed, "random seed")->capture_default_str();
    app.add_flag("--no-timestamp", o.no_timestamp, "omit the generation time from headers");

    app.add_option("--xmin", o.xmin, "table start in x")->capture_default_str();
    app.add_option("--xmax", o.xmax, "table end in x")->capture_default_str();
    app.add_option("--kmax", o.kmax, "table end in k (0: automatic)")->capture_default_str();
    app.add_option("--points", o.points, "table rows (0: command default)")->capture_default_str();

    app.add_option("--kind", o.kind, "sweep: ra-bw, gh, ct, compare, all")->capture_default_str();
    app.add_option("--axis", o.axis, "sweep axis: eta, m (gh), dk (ct)")->capture_default_str();
    app.add_option("--eta-min", o.eta_min, "sweep start")->capture_default_str();
    app.add_option("--eta-max", o.eta_max, "sweep end")->capture_default_str();
    app.add_option("--m-list", o.m_list, "GH orders")->capture_default_str();
    app.add_option("--dk-list", o.dk_list, "CT spreads")->capture_default_str();
    app.add_option("--eta-list", o.eta_list, "eta columns for --axis m|dk")->capture_default_str();

    app.add_option("--families", o.families, "noise: filters to report")->capture_default_str();
    app.add_option("--trials", o.trials, "noise: Monte Carlo trials (0: skip)")->capture_default_str();
    app.add_option("--n", o.n, "noise: grid half-size N")->capture_default_str();
    app.add_option("--dx", o.dx, "noise: grid spacing")->capture_default_str();
    app.add_option("--sigma", o.sigma, "noise: per-point rms")->capture_default_str();

    app.add_option("--in", o.in, "apply: input spectrum file");
    app.add_option("--spec", o.spec_path, "apply: key=value filter spec file");
    app.add_option("--path", o.path, "apply: rs or ds")->capture_default_str();

    app.add_option("--gamma", o.gammas, "gibbs: line half-widths")->capture_default_str();
    app.add_option("--kernels", o.kernels, "gibbs: also write RA/BW/CT kernel table here");

    app.add_option("--bench-points", o.bench_points, "bench: x-points per run")->capture_default_str();
    app.add_option("--gh-points", o.gh_points, "bench: x-points for uncached GH")->capture_default_str();
    app.add_option("--runs", o.runs, "bench: measured runs")->capture_default_str();
    app.add_option("--warmup", o.warmup, "bench: warm-up runs")->capture_default_str();
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Linear noise-reduction filters for spectra: calibration, assessment and application"};
    app.name("rsfilter");
    Options o;
    add_options(app, o);
    app.set_config("--config", "", "key=value configuration file (flags override it)");
    app.allow_config_extras(false);
    app.require_subcommand(1, 1);
    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"calibrate", "calibrate one filter to b(x_o)/b(0) = 1/2 and print its spec"},
             {"kernel", "tabulate DS kernels b(x)"},
             {"transfer", "tabulate transfer functions B(k)"},
             {"sweep", "MSE ratio sweeps over eta, M or dk"},
             {"noise", "noise gain table"},
             {"apply", "filter a spectrum file"},
             {"gibbs", "Gibbs residual amplitude and period"},
             {"bench", "CT closed form vs GH quadrature kernel timing"},
         }) {
        app.add_subcommand(name, help)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_validation;
    }
    o.command = app.get_subcommands().front()->get_name();

    try {
        validate(o);
        if (o.command == "calibrate") return cmd_calibrate(o, out);
        if (o.command == "kernel") return cmd_kernel(o, out);
        if (o.command == "transfer") return cmd_transfer(o, out);
        if (o.command == "sweep") return cmd_sweep(o, out, err);
        if (o.command == "noise") return cmd_noise(o, out);
        if (o.command == "apply") return cmd_apply(o, out);
        if (o.command == "gibbs") return cmd_gibbs(o, out);
        if (o.command == "bench") return cmd_bench(o, out);
    } catch (const ValidationError& e) {
        err << "error: invalid configuration\n";
        for (const auto& v : e.violations()) {
            err << "  - " << v << '\n';
        }
        return exit_validation;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const CalibrationError& e) {
        err << "error: " << e.what() << '\n';
        if (e.clamped()) {
            err << fmt::format("  nearest admissible: {} with residual {:.3e}\n", describe(e.clamped()->spec), e.clamped()->residual);
        }
        return exit_numeric;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << '\n';
        return exit_numeric;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    }
    err << "error: unknown command\n";
    return exit_validation;
}

} // namespace rsfilter::cli
