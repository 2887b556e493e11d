#ifndef CHIPNOISE_BESSEL_HPP
#define CHIPNOISE_BESSEL_HPP

// Modified Bessel functions of the second kind, K0 and K1, double
// precision. The shot-noise scattering cross section depends on the
// exponential tail of K1, so these use minimax rational approximations
// good to ~1e-15 relative error over the full range; the test suite
// checks them against an independent high-precision oracle.

namespace chipnoise {

// K0(x), x > 0. Throws std::domain_error for x < 0; returns +inf at x = 0.
double bessel_k0(double x);

// K1(x), x > 0. Throws std::domain_error for x < 0; returns +inf at x = 0.
double bessel_k1(double x);

// x * K1(x), continuous at x = 0 where it equals 1. Evaluated without the
// 1/x cancellation so the small-argument limit is exact.
double xk1(double x);

}  // namespace chipnoise

#endif
