#ifndef CHIPNOISE_QUADRATURE_HPP
#define CHIPNOISE_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "chipnoise/constants.hpp"
#include "chipnoise/errors.hpp"

// Adaptive Gauss-Kronrod (G7/K15) quadrature. Workspaces live on the
// stack of each call, so everything here is thread-safe.

namespace chipnoise {

namespace gk {

// QUADPACK dqk15 abscissae (positive half) and weights.
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double value;
    double error;
};

template <class F>
PanelResult k15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double res_k = wgk[7] * fc;
    double res_g = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * xgk[i];
        const double fsum = f(c - dx) + f(c + dx);
        res_k += wgk[i] * fsum;
        if (i % 2 == 1) res_g += wg[i / 2] * fsum;
    }
    return {res_k * h, std::abs((res_k - res_g) * h)};
}

}  // namespace gk

struct QuadratureOptions {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;
    int max_panels = 4000;
};

// Integrate f over [a, b], subdividing the worst panel until the summed
// error estimate meets the tolerance. Throws NumericalError when the
// panel budget runs out.
template <class F>
double integrate(const F& f, double a, double b,
                 const QuadratureOptions& opt = {}) {
    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    std::priority_queue<Panel> panels;
    auto first = gk::k15(f, a, b);
    panels.push({a, b, first.value, first.error});
    double total = first.value;
    double total_err = first.error;
    int n = 1;
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (n >= opt.max_panels)
            throw NumericalError(
                "quadrature: no convergence after " + std::to_string(n) +
                " panels over [" + std::to_string(a) + ", " + std::to_string(b) +
                "], error estimate " + std::to_string(total_err));
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // panel is at floating-point resolution; accept its estimate
            total_err -= worst.error;
            worst.error = 0.0;
            panels.push(worst);
            continue;
        }
        auto left = gk::k15(f, worst.a, mid);
        auto right = gk::k15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push({worst.a, mid, left.value, left.error});
        panels.push({mid, worst.b, right.value, right.error});
        ++n;
    }
    return total;
}

// Integrate over [a, b] with interior breakpoints (sorted or not); each
// sub-interval gets its own adaptive pass sharing the tolerance.
template <class F>
double integrate_segmented(const F& f, double a, double b,
                           std::vector<double> breakpoints,
                           const QuadratureOptions& opt = {}) {
    breakpoints.push_back(a);
    breakpoints.push_back(b);
    std::sort(breakpoints.begin(), breakpoints.end());
    double total = 0.0;
    double prev = a;
    QuadratureOptions sub = opt;
    sub.abs_tol = std::max(opt.abs_tol, 1e-300);
    for (double x : breakpoints) {
        if (x <= prev || x < a) continue;
        if (x > b) break;
        total += integrate(f, prev, x, sub);
        // later segments only need to resolve their share of the total
        sub.abs_tol = std::max(opt.abs_tol, 0.1 * opt.rel_tol * std::abs(total));
        prev = x;
    }
    if (prev < b) total += integrate(f, prev, b, sub);
    return total;
}

// One-sided cosine transform: int_0^inf f(s) cos(q s) ds for an
// absolutely integrable, eventually monotone f with an O(1/s^2) tail.
// For oscillatory q the integral is summed between the zeros of the
// cosine, which gives an alternating series with a controlled tail; for
// small q dyadic panels plus an explicit K/s^2 tail correction are used.
// `s_scale` sets the feature size of f near the origin.
template <class F>
double fourier_cos_integral(const F& f, double q, double s_scale,
                            double rel_tol = 1e-9) {
    q = std::abs(q);
    QuadratureOptions opt;
    opt.rel_tol = 0.1 * rel_tol;

    if (q * s_scale < 1e-6) {
        // effectively non-oscillatory over the support of f
        double total = 0.0;
        double s0 = 0.0, s1 = s_scale;
        for (int k = 0; k < 64; ++k) {
            const double part =
                integrate([&](double s) { return f(s) * std::cos(q * s); },
                          s0, s1, opt);
            total += part;
            s0 = s1;
            s1 *= 2.0;
            if (std::abs(part) < 0.25 * rel_tol * std::abs(total) &&
                k > 4) break;
        }
        // tail from the 1/s^2 asymptote
        const double tail_k = f(s0) * s0 * s0;
        total += tail_k / s0;
        return total;
    }

    // Between its zeros the cosine gives an alternating series whose
    // terms decay only algebraically for slowly-decaying f, so the
    // partial sums are Euler-accelerated (repeated averaging).
    const double half = constants::pi / q;
    double total = integrate(
        [&](double s) { return f(s) * std::cos(q * s); }, 0.0, 0.5 * half, opt);
    double a = 0.5 * half;
    // natural magnitude of the sum; differences below ~1e-16 of it are
    // double-precision cancellation noise, not signal
    const double scale0 = std::max(std::abs(total), 1e-300);
    constexpr int window = 12;
    std::vector<double> partials;
    partials.reserve(4096);
    double best_prev = total;
    for (int n = 0; n < 20000; ++n) {
        const double b = a + half;
        const double part = integrate(
            [&](double s) { return f(s) * std::cos(q * s); }, a, b, opt);
        total += part;
        a = b;
        partials.push_back(total);
        if (std::abs(part) < 0.1 * rel_tol * std::abs(total)) return total;
        if (partials.size() >= 4) {
            const int m = std::min<int>(window, static_cast<int>(partials.size()));
            double buf[window];
            for (int i = 0; i < m; ++i)
                buf[i] = partials[partials.size() - m + i];
            for (int level = 1; level < m; ++level)
                for (int i = 0; i + level < m; ++i)
                    buf[i] = 0.5 * (buf[i] + buf[i + 1]);
            const double best = buf[0];
            const double floor = 1e-15 * scale0;
            if (partials.size() >= 8 &&
                std::abs(best - best_prev) <
                    std::max(0.5 * rel_tol * std::abs(best), floor))
                return best;
            best_prev = best;
        }
    }
    throw NumericalError("fourier_cos_integral: oscillatory sum did not settle");
}

}  // namespace chipnoise

#endif
