#ifndef RSFILTER_FFT_HPP
#define RSFILTER_FFT_HPP

#include <algorithm>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <span>

#include <fftw3.h>

#include <rsfilter/error.hpp>

namespace rsfilter::fft {

namespace detail {

// FFTW's planner is not thread-safe; execution of an existing plan is.
inline std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

/// Forward and backward plans for one length, with their own aligned buffers.
class Plan {
public:
    explicit Plan(std::size_t n) : n_(n) {
        in_ = fftw_alloc_complex(n);
        out_ = fftw_alloc_complex(n);
        if (in_ == nullptr || out_ == nullptr) {
            release_buffers();
            throw NumericError("FFTW buffer allocation failed");
        }
        const std::lock_guard lock(planner_mutex());
        forward_ = fftw_plan_dft_1d(static_cast<int>(n), in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
        backward_ = fftw_plan_dft_1d(static_cast<int>(n), in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;

    ~Plan() {
        {
            const std::lock_guard lock(planner_mutex());
            if (forward_ != nullptr) fftw_destroy_plan(forward_);
            if (backward_ != nullptr) fftw_destroy_plan(backward_);
        }
        release_buffers();
    }

    /// out_q = sum_n in_n e^{-+2 pi i q n / len}; sign -1 for forward.
    void run(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, bool forward) {
        auto* buf = reinterpret_cast<std::complex<double>*>(in_);
        std::copy(in.begin(), in.end(), buf);
        fftw_execute(forward ? forward_ : backward_);
        const auto* res = reinterpret_cast<const std::complex<double>*>(out_);
        std::copy(res, res + n_, out.begin());
    }

private:
    void release_buffers() {
        if (in_ != nullptr) fftw_free(in_);
        if (out_ != nullptr) fftw_free(out_);
        in_ = out_ = nullptr;
    }

    std::size_t n_;
    fftw_complex* in_ = nullptr;
    fftw_complex* out_ = nullptr;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

inline Plan& plan_for(std::size_t n) {
    thread_local std::map<std::size_t, std::unique_ptr<Plan>> plans;
    auto& slot = plans[n];
    if (!slot) {
        slot = std::make_unique<Plan>(n);
    }
    return *slot;
}

} // namespace detail

/// Unnormalized DFT, out_q = sum_n in_n e^{-2 pi i q n/len}.
inline void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) { detail::plan_for(in.size()).run(in, out, true); }

/// Unnormalized inverse DFT, out_n = sum_q in_q e^{+2 pi i q n/len}.
inline void backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) { detail::plan_for(in.size()).run(in, out, false); }

} // namespace rsfilter::fft

#endif // RSFILTER_FFT_HPP
