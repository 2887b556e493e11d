#ifndef CHIPNOISE_FFT_HPP
#define CHIPNOISE_FFT_HPP

#include <complex>
#include <cstddef>

// Thin RAII wrapper over FFTW complex transforms of a fixed size.
// FFTW plan creation is not thread-safe, so construction takes a global
// lock; execution on caller-owned buffers is safe from any thread.

namespace chipnoise {

class Fft1D {
public:
    explicit Fft1D(int n);
    ~Fft1D();

    Fft1D(const Fft1D&) = delete;
    Fft1D& operator=(const Fft1D&) = delete;
    Fft1D(Fft1D&& other) noexcept;
    Fft1D& operator=(Fft1D&& other) noexcept;

    int size() const { return n_; }

    // in-place, unnormalized: X_k = sum_j x_j e^{-2 pi i j k / n}
    void forward(std::complex<double>* data) const;
    // in-place, includes the 1/n factor
    void inverse(std::complex<double>* data) const;

private:
    int n_ = 0;
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
};

}  // namespace chipnoise

#endif
