// MSE of each filter family relative to the brick wall, for a few line widths.
#include <cstdio>

#include <rsfilter/rsfilter.hpp>

int main() {
    using namespace rsfilter;

    const double x0 = 1.0;
    const FilterSpec filters[] = {
        calibrate_ra(x0).spec,
        calibrate_gh(x0, 10).spec,
        calibrate_ct(x0, 5.0, 0.5).spec,
        special_case(SpecialCase::hann, x0).spec,
    };
    std::printf("%6s", "eta");
    for (const char* name : {"ra", "gh_m10", "ct", "hann"}) {
        std::printf("%12s", name);
    }
    std::printf("\n");
    for (double eta : {0.5, 1.0, 2.0, 3.0, 5.0}) {
        const LorentzianLine line{eta * x0, 0.0, 1.0};
        const double bw = mse_bw_analytic(EtaRatio(eta), x0);
        std::printf("%6.2f", eta);
        for (const auto& f : filters) {
            std::printf("%12.4f", mse_numeric(line, f) / bw);
        }
        std::printf("\n");
    }
    return 0;
}
