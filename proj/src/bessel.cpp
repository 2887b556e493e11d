#include "chipnoise/bessel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

// Rational minimax approximations for double precision, after
// Russon & Blair (Chalk River AECL-3461, 1969) as refined by
// Xiaogang Zhang and John Maddock; coefficients are the standard
// 53-bit tables.

namespace chipnoise {

namespace {

template <int N>
double eval_poly(const double (&c)[N], double x) {
    double r = c[N - 1];
    for (int i = N - 2; i >= 0; --i) r = r * x + c[i];
    return r;
}

// K0, x in (0, 1]: r1(x^2) - log(x) r2(x^2)
constexpr double k0_p1[] = {
    2.4708152720399552679e+03, 5.9169059852270512312e+03,
    4.6850901201934832188e+02, 1.1999463724910714109e+01,
    1.3166052564989571850e-01, 5.8599221412826100000e-04};
constexpr double k0_q1[] = {
    2.1312714303849120380e+04, -2.4994418972832303646e+02, 1.0};
constexpr double k0_p2[] = {
    -1.6128136304458193998e+06, -3.7333769444840079748e+05,
    -1.7984434409411765813e+04, -2.9501657892958843865e+02,
    -1.6414452837299064100e+00};
constexpr double k0_q2[] = {
    -1.6128136304458193998e+06, 2.9865713163054025489e+04,
    -2.5064972445877992730e+02, 1.0};
// K0, x > 1: exp(-x)/sqrt(x) * r3(1/x)
constexpr double k0_p3[] = {
    1.1600249425076035558e+02, 2.3444738764199315021e+03,
    1.8321525870183537725e+04, 7.1557062783764037541e+04,
    1.5097646353289914539e+05, 1.7398867902565686251e+05,
    1.0577068948034021957e+05, 3.1075408980684392399e+04,
    3.6832589957340267940e+03, 1.1394980557384778174e+02};
constexpr double k0_q3[] = {
    9.2556599177304839811e+01, 1.8821890840982713696e+03,
    1.4847228371802360957e+04, 5.8824616785857027752e+04,
    1.2689839587977598727e+05, 1.5144644673520157801e+05,
    9.7418829762268075784e+04, 3.1474655750295278825e+04,
    4.4329628889746408858e+03, 2.0013443064949242491e+02, 1.0};

// K1, x in (0, 1]: the log part multiplies an I1-like series "a";
// K1 = r2(x^2) x + 1/x + log(x) a
constexpr double k1_y_small = 8.69547128677368164e-02;
constexpr double k1_pa[] = {
    -3.62137953440350228e-03, 7.11842087490330300e-03,
    1.00302560256614306e-05, 1.77231085381040811e-06};
constexpr double k1_qa[] = {
    1.0, -4.80414794429043831e-02, 9.85972641934416525e-04,
    -8.91196859397070326e-06};
constexpr double k1_p2[] = {
    -3.07965757829206184e-01, -7.80929703673074907e-02,
    -2.70619343754051620e-03, -2.49549522229072008e-05};
constexpr double k1_q2[] = {
    1.0, -2.36316836412163098e-02, 2.64524577525962719e-04,
    -1.49749618004162787e-06};
// K1, x > 1: (r(1/x) + Y) exp(-x)/sqrt(x)
constexpr double k1_y_large = 1.45034217834472656;
constexpr double k1_pl[] = {
    -1.97028041029226295e-01, -2.32408961548087617e+00,
    -7.98269784507699938e+00, -2.39968410774221632e+00,
    3.28314043780858713e+01, 5.67713761158496058e+01,
    3.30907788466509823e+01, 6.62582288933739787e+00,
    3.08851840645286691e-01};
constexpr double k1_ql[] = {
    1.0, 1.41811409298826118e+01, 7.35979466317556420e+01,
    1.77821793937080859e+02, 2.11014501598705982e+02,
    1.19425262951064454e+02, 2.88448064302447607e+01,
    2.27912927104139732e+00, 2.50358186953478678e-02};

// x*K1(x) - 1 is needed without cancellation for small x.
// x*K1(x) = r2(x^2) x^2 + 1 + x log(x) a(x)
double xk1_small(double x) {
    const double y = x * x;
    double a = y / 4.0;
    a = ((eval_poly(k1_pa, a) / eval_poly(k1_qa, a) + k1_y_small) * a * a +
         a / 2.0 + 1.0) * x / 2.0;
    return eval_poly(k1_p2, y) / eval_poly(k1_q2, y) * y + 1.0 + x * std::log(x) * a;
}

double k1_large(double x) {
    const double u = 1.0 / x;
    const double r = eval_poly(k1_pl, u) / eval_poly(k1_ql, u) + k1_y_large;
    if (x > 705.0) {
        const double ex = std::exp(-x / 2.0);
        return r * ex / std::sqrt(x) * ex;
    }
    return r * std::exp(-x) / std::sqrt(x);
}

}  // namespace

double bessel_k0(double x) {
    if (x < 0.0) throw std::domain_error("bessel_k0: argument must be >= 0");
    if (x == 0.0) return std::numeric_limits<double>::infinity();
    if (x <= 1.0) {
        const double y = x * x;
        const double r1 = eval_poly(k0_p1, y) / eval_poly(k0_q1, y);
        const double r2 = eval_poly(k0_p2, y) / eval_poly(k0_q2, y);
        return r1 - std::log(x) * r2;
    }
    const double u = 1.0 / x;
    const double r = eval_poly(k0_p3, u) / eval_poly(k0_q3, u);
    if (x > 705.0) {
        const double ex = std::exp(-x / 2.0);
        return ex * r / std::sqrt(x) * ex;
    }
    return std::exp(-x) * r / std::sqrt(x);
}

double bessel_k1(double x) {
    if (x < 0.0) throw std::domain_error("bessel_k1: argument must be >= 0");
    if (x == 0.0) return std::numeric_limits<double>::infinity();
    if (x <= 1.0) return xk1_small(x) / x;
    return k1_large(x);
}

double xk1(double x) {
    if (x < 0.0) throw std::domain_error("xk1: argument must be >= 0");
    if (x == 0.0) return 1.0;
    if (x <= 1.0) return xk1_small(x);
    return x * k1_large(x);
}

}  // namespace chipnoise
