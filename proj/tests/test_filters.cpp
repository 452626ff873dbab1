#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"

using namespace rsfilter;
using Catch::Approx;

namespace {

/// Int b dx over [-L, L] by Gauss-Kronrod on panels of a quarter period of the fastest oscillation.
double unit_integral(const FilterSpec& spec, double length) {
    const double panel = 0.5 * numeric::pi / band_edge(spec);
    const auto panels = static_cast<int>(std::ceil(length / panel));
    double acc = 0.0;
    for (int i = 0; i < panels; ++i) {
        acc += boost::math::quadrature::gauss_kronrod<double, 31>::integrate([&](double x) { return kernel(spec, x); }, i * panel, (i + 1) * panel, 5, 1e-14);
    }
    return 2.0 * acc;
}

} // namespace

TEST_CASE("filter specs validate their parameters", "[filters][spec]") {
    CHECK_THROWS_AS(FilterSpec::ra(0.0), ValidationError);
    CHECK_THROWS_AS(FilterSpec::bw(-1.0), ValidationError);
    CHECK_THROWS_AS(FilterSpec::gh(0, 1.0), ValidationError);
    CHECK_THROWS_AS(FilterSpec::ct(-0.1, 5.0, 0.5), ValidationError);
    CHECK_THROWS_AS(FilterSpec::ct(1.0, 0.4, 0.5), ValidationError);
    CHECK_NOTHROW(FilterSpec::ct(1.0, 0.5, 0.5));

    try {
        (void)FilterSpec::ct(-1.0, 0.1, 0.0);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(e.violations().size() == 3);
    }
}

TEST_CASE("k2_of", "[filters][spec]") {
    CHECK(k2_of({2.0, 5.0, 0.5}) == Approx(2.0 + 0.5 * std::acos(0.8)).epsilon(1e-15));
    CHECK(k2_of({2.0, 5.0, 0.5}) == Approx(2.3217505544).epsilon(1e-10));
    CHECK(k2_of({1.0, 0.5, 0.3}) == Approx(1.0 + numeric::pi * 0.3).epsilon(1e-15));
    CHECK(k2_of({1.0, 1e12, 0.3}) - 1.0 < 1e-6);
}

TEST_CASE("spec key=value round trip is lossless", "[filters][spec]") {
    const FilterSpec specs[] = {
        FilterSpec::ra(0.7),
        FilterSpec::bw(1.8954942670339809, 1.0),
        FilterSpec::gh(100, 0.18833080789451101, 1.0),
        FilterSpec::ct(1.6791246414768031, 5.0, 0.5, 1.0),
        FilterSpec::ct(0.0, 0.5, 1.0 / 3.0),
    };
    for (const auto& s : specs) {
        const auto text = to_key_values(s);
        INFO(text);
        CHECK(parse_filter_spec(text) == s);
    }
    CHECK_THROWS_AS(parse_filter_spec("family=ct\nk_1=1\na=5\ndk=0.5\nk_2=9"), ValidationError);
    CHECK_THROWS_AS(parse_filter_spec("family=zz"), ValidationError);
    CHECK(parse_filter_spec("family=bw, k_o=2 # comment") == FilterSpec::bw(2.0));
}

TEST_CASE("transfer functions", "[filters][transfer]") {
    const auto ct = FilterSpec::ct(2.0, 5.0, 0.5);
    for (const auto& s : {FilterSpec::ra(1.0), FilterSpec::bw(1.0), FilterSpec::gh(7, 0.4), ct}) {
        CHECK(transfer(s, 0.0) == 1.0);
    }
    CHECK(transfer(FilterSpec::bw(1.8955), 2.0) == 0.0);
    CHECK(transfer(ct, 2.0) == 1.0);
    CHECK(transfer(ct, k2_of(ct.as<CosineTerminated>())) == Approx(0.0).margin(1e-15));
    CHECK(transfer(FilterSpec::ra(1.0), numeric::pi) == Approx(0.0).margin(1e-16));
    CHECK(transfer(FilterSpec::ra(1.0), 4.0) < 0.0);
    CHECK(transfer(FilterSpec::gh(1, 1.0), 1.0) == Approx(2.0 / std::exp(1.0)).epsilon(1e-14));

    SECTION("GH against the direct series") {
        for (int m : {1, 2, 5, 10, 30}) {
            for (double y : {0.1, 0.5, 1.0, 2.0, 3.0, 5.0}) {
                INFO("M=" << m << " y=" << y);
                CHECK(transfer(FilterSpec::gh(m, 1.3), 1.3 * y) == Approx(oracle::gh_series(m, y)).epsilon(1e-12).margin(1e-300));
            }
        }
    }
    SECTION("GH monotone in y and in M") {
        for (int m : {1, 5, 100}) {
            double prev = 2.0;
            for (int i = 0; i <= 400; ++i) {
                const double v = transfer(FilterSpec::gh(m, 1.0), 0.05 * i);
                CHECK(v <= prev);
                prev = v;
            }
        }
        for (double y : {0.5, 2.0, 8.0}) {
            CHECK(transfer(FilterSpec::gh(2, 1.0), y) < transfer(FilterSpec::gh(3, 1.0), y));
        }
    }
    SECTION("CT joins smoothly at k_1 and reaches zero at k_2") {
        const auto& p = ct.as<CosineTerminated>();
        // one-sided slope at k_1 vanishes linearly in h (cos onset)
        for (double h : {1e-3, 1e-4, 1e-5}) {
            CHECK(std::abs((transfer(ct, p.k_1 + h) - 1.0) / h) <= 0.51 * p.a * h / (p.dk * p.dk));
        }
        CHECK(transfer(ct, k2_of(p) - 1e-12) == Approx(0.0).margin(1e-10));
        CHECK(transfer(ct, k2_of(p) + 1e-12) == 0.0);
    }
    SECTION("special cases") {
        const auto tukey = special_case(SpecialCase::tukey, 1.0, 0.4).spec.as<CosineTerminated>();
        const double mid = 0.5 * (tukey.k_1 + k2_of(tukey));
        CHECK(transfer(FilterSpec(tukey), mid) == Approx(0.5).epsilon(1e-14));

        const auto hann = special_case(SpecialCase::hann, 1.0).spec;
        const auto& hp = hann.as<CosineTerminated>();
        CHECK(hp.k_1 == 0.0);
        CHECK(hp.a == 0.5);
        for (double k : {0.1, 0.9, 2.0}) {
            CHECK(transfer(hann, k) == Approx(0.5 * (1.0 + std::cos(k / hp.dk))).epsilon(1e-14));
        }

        const auto welch = special_case(SpecialCase::welch_approx, 1.0).spec;
        CHECK(transfer(welch, 0.0) == 1.0);
        CHECK(transfer(welch, k2_of(welch.as<CosineTerminated>())) == Approx(0.0).margin(1e-15));
    }
}

TEST_CASE("kernels", "[filters][kernel]") {
    CHECK(kernel(FilterSpec::ra(1.0), 0.5) == 0.5);
    CHECK(kernel(FilterSpec::ra(1.0), 1.0) == 0.25);
    CHECK(kernel(FilterSpec::ra(1.0), 1.5) == 0.0);
    CHECK(kernel(FilterSpec::bw(1.9), 0.0) == Approx(1.9 / numeric::pi).epsilon(1e-15));
    CHECK(kernel(FilterSpec::bw(1.9), 2.0) == Approx(std::sin(3.8) / (numeric::pi * 2.0)).epsilon(1e-14));
}

TEST_CASE("CT kernel closed form against quadrature", "[filters][kernel][oracle]") {
    const double k1 = 1.6791246414768031;
    const double a = 5.0;
    const double dk = 0.5;
    const auto spec = FilterSpec::ct(k1, a, dk);
    std::vector<double> xs;
    for (int i = 0; i < 980; ++i) {
        xs.push_back(-30.0 + 60.0 * (i + 0.5) / 980.0);
    }
    for (double base : {0.0, 1.0 / dk, -1.0 / dk}) {
        for (double off : {-1e-12, 0.0, 1e-12, -5e-7, 5e-7, -2e-6, 2e-6}) {
            xs.push_back(base + off);
        }
    }
    double worst = 0.0;
    for (double x : xs) {
        worst = std::max(worst, std::abs(kernel(spec, x) - oracle::ct_kernel_quadrature(k1, a, dk, x)));
    }
    CHECK(worst < 1e-7);

    for (const auto& p : {CosineTerminated{0.0, 0.5, 1.0}, CosineTerminated{0.3, 1.0, 0.8}, CosineTerminated{2.0, 20.0, 0.2}}) {
        for (double x : {0.0, 0.3, 1.0 / p.dk, 5.0, -17.0}) {
            INFO("k1=" << p.k_1 << " a=" << p.a << " dk=" << p.dk << " x=" << x);
            CHECK(kernel(FilterSpec(p), x) == Approx(oracle::ct_kernel_quadrature(p.k_1, p.a, p.dk, x)).margin(1e-9));
        }
    }
}

TEST_CASE("GH kernel against the Hermite-function closed form", "[filters][kernel][oracle]") {
    for (int m : {1, 2, 5}) {
        const double k_s = 0.9;
        const auto spec = FilterSpec::gh(m, k_s);
        for (double x : {0.0, 0.4, 1.0, 2.5, 6.0, 11.0}) {
            INFO("M=" << m << " x=" << x);
            CHECK(kernel(spec, x) == Approx(oracle::gh_kernel_hermite(m, k_s, x)).margin(1e-10));
            CHECK(kernel_uncached(spec, x) == Approx(oracle::gh_kernel_hermite(m, k_s, x)).margin(1e-11));
        }
    }
}

TEST_CASE("GH cached kernel matches the uncached quadrature at M=100", "[filters][kernel]") {
    const auto spec = FilterSpec::gh(100, 0.18833080789451101);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double x = 0.173 * i;
        worst = std::max(worst, std::abs(kernel(spec, x) - kernel_uncached(spec, x)));
    }
    CHECK(worst < 1e-9 * kernel(spec, 0.0));
}

TEST_CASE("kernels are unitary", "[filters][kernel]") {
    CHECK(unit_integral(FilterSpec::ra(0.8), 1.0) == Approx(1.0).epsilon(1e-12));
    CHECK(unit_integral(FilterSpec::gh(3, 1.1), 60.0) == Approx(1.0).epsilon(1e-9));
    CHECK(unit_integral(calibrate_gh(1.0, 100).spec, 400.0) == Approx(1.0).epsilon(1e-8));
    // CT tail decays as 1/x^2; the part beyond L is below 1e-6
    CHECK(unit_integral(FilterSpec::ct(1.2, 5.0, 0.5), 2000.0) == Approx(1.0).epsilon(1e-6));
    // BW: the sinc integral is only conditionally convergent; B(0) = 1 carries the statement
    CHECK(transfer(FilterSpec::bw(1.7), 0.0) == 1.0);
}

TEST_CASE("forward transform of each kernel reproduces its transfer", "[filters][duality][oracle]") {
    const FilterSpec specs[] = {calibrate_gh(1.0, 5).spec, calibrate_ct(1.0, 5.0, 0.5).spec, special_case(SpecialCase::hann, 1.0).spec};
    for (const auto& s : specs) {
        const double top = 3.0 * band_edge(s);
        for (int i = 1; i <= 24; ++i) {
            const double k = top * (i - 0.5) / 24.0; // off the breakpoints
            const double back = numeric::two_pi * oracle::forward_transform_even([&](double x) { return kernel(s, x); }, k);
            INFO(describe(s) << " k=" << k);
            CHECK(back == Approx(transfer(s, k)).margin(1e-6));
        }
    }
}

TEST_CASE("BW kernel and RA transfer are (x,k) complementary", "[filters]") {
    // x_o b_BW(x)/b_BW(0) with k_o x_o = z equals the RA transfer sinc(k x_o) at k = x z / x_o^2
    const double z = oracle::sinc_half_root();
    const auto bw = FilterSpec::bw(z);
    const auto ra = FilterSpec::ra(1.0);
    for (double t : {0.0, 0.5, 1.0, 3.0, 7.5}) {
        CHECK(kernel(bw, t) / kernel(bw, 0.0) == Approx(transfer(ra, z * t)).margin(1e-15));
    }
}

TEST_CASE("calibration", "[filters][calibrate]") {
    const double z = oracle::sinc_half_root();
    CHECK(calibrate_bw(1.0).spec.as<BrickWall>().k_o == Approx(z).epsilon(1e-13));
    CHECK(calibrate_bw(1.0).spec.as<BrickWall>().k_o == Approx(1.8954942670339809).epsilon(1e-12));
    CHECK(calibrate_ra(1.0).spec == FilterSpec::ra(1.0));

    SECTION("frozen free parameters") {
        CHECK(calibrate_ct(1.0, 5.0, 0.5).spec.as<CosineTerminated>().k_1 == Approx(1.6791246414768031).epsilon(1e-9));
        CHECK(calibrate_gh(1.0, 100).spec.as<GaussHermite>().k_s == Approx(0.18833080789451101).epsilon(1e-9));
        CHECK(calibrate_gh(1.0, 1).spec.as<GaussHermite>().k_s == Approx(1.25072).epsilon(1e-5));
        CHECK(special_case(SpecialCase::hann, 1.0).spec.as<CosineTerminated>().dk == Approx(1.0).epsilon(1e-6));
    }
    SECTION("residual below 1e-9, verified by fresh kernel evaluation") {
        for (double x_o : {0.5, 1.0, 2.0}) {
            for (auto fam : {Family::ra, Family::bw, Family::gh, Family::ct}) {
                const auto r = calibrate(fam, x_o, CalibrationParams{10, 5.0, 0.5 / x_o});
                const double ratio = fam == Family::gh ? kernel_uncached(r.spec, x_o) / kernel_uncached(r.spec, 0.0) : kernel(r.spec, x_o) / kernel(r.spec, 0.0);
                INFO(describe(r.spec) << " x_o=" << x_o);
                CHECK(r.residual < 1e-9);
                CHECK(std::abs(ratio - 0.5) < 1e-9);
            }
        }
    }
    SECTION("GH M=100 transfer is nearly centred on the BW cutoff") {
        const auto gh = calibrate_gh(1.0, 100).spec;
        CHECK(half_transfer_frequency(gh) == Approx(z).epsilon(0.02));
    }
    SECTION("scaling with x_o") {
        CHECK(calibrate_ct(2.0, 5.0, 0.25).spec.as<CosineTerminated>().k_1 == Approx(1.6791246414768031 / 2.0).epsilon(1e-9));
    }
    SECTION("impossible spreads are reported with the clamped spec") {
        try {
            (void)calibrate_ct(1.0, 5.0, 20.0);
            FAIL("expected a calibration failure");
        } catch (const CalibrationError& e) {
            REQUIRE(e.clamped().has_value());
            CHECK(e.clamped()->spec.as<CosineTerminated>().k_1 == 0.0);
        }
        CHECK_THROWS_AS(calibrate_bw(0.0), ValidationError);
    }
}
