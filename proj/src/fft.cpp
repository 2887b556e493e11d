#include "chipnoise/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <vector>

namespace chipnoise {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Fft1D::Fft1D(int n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("Fft1D: size must be positive");
    std::vector<std::complex<double>> probe(static_cast<std::size_t>(n));
    auto* p = reinterpret_cast<fftw_complex*>(probe.data());
    std::lock_guard<std::mutex> lock(planner_mutex());
    // FFTW_UNALIGNED lets the plans run on any caller buffer
    plan_fwd_ = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_bwd_ = fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan_fwd_ || !plan_bwd_)
        throw std::runtime_error("Fft1D: fftw plan creation failed");
}

Fft1D::~Fft1D() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

Fft1D::Fft1D(Fft1D&& other) noexcept
    : n_(other.n_), plan_fwd_(other.plan_fwd_), plan_bwd_(other.plan_bwd_) {
    other.plan_fwd_ = nullptr;
    other.plan_bwd_ = nullptr;
    other.n_ = 0;
}

Fft1D& Fft1D::operator=(Fft1D&& other) noexcept {
    if (this != &other) {
        {
            std::lock_guard<std::mutex> lock(planner_mutex());
            if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
            if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
        }
        n_ = other.n_;
        plan_fwd_ = other.plan_fwd_;
        plan_bwd_ = other.plan_bwd_;
        other.plan_fwd_ = nullptr;
        other.plan_bwd_ = nullptr;
        other.n_ = 0;
    }
    return *this;
}

void Fft1D::forward(std::complex<double>* data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), p, p);
}

void Fft1D::inverse(std::complex<double>* data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), p, p);
    const double inv = 1.0 / n_;
    for (int i = 0; i < n_; ++i) data[i] *= inv;
}

}  // namespace chipnoise
