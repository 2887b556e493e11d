#ifndef CHIPNOISE_RATES_HPP
#define CHIPNOISE_RATES_HPP

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "chipnoise/core_model.hpp"
#include "chipnoise/noise_spectra.hpp"

// Golden-rule rates and the order-of-magnitude scaling estimates:
// spin flips, qubit dephasing, vibrational heating (direct, displacement
// and parametric), and the temperature-rise relation.

namespace chipnoise {

struct SpinTransition {
    double F = 0.5;
    double m_initial = 0.5;
    double m_final = -0.5;
    double g_factor = 2.0;

    SpinTransition() = default;
    SpinTransition(double F_, double mi, double mf, double gF);

    // selection rule: only |m_f - m_i| = 1 couples to the field
    bool allowed() const { return std::abs(std::abs(m_final - m_initial) - 1.0) < 1e-12; }
};

// Dimensionless angular-momentum matrix F_a (a = 0,1,2 for x,y,z) in the
// |F, m> basis, m = -F..F ascending. Built from the ladder operators;
// used both by spin_flip_rate and as a brute-force oracle in the tests.
std::vector<std::complex<double>> angular_momentum_matrix(double F, int axis);

// Golden-rule spin flip rate,
//   Gamma = (1/hbar^2) sum_ab <i|mu_a|f><f|mu_b|i> S_ab
// with mu = g_F * mu_scale * F and the quantization axis along
// `axis` (defaults to the tensor's z axis). Returns exactly 0 for
// transitions violating the selection rule.
double spin_flip_rate(const NoiseTensor& tensor, const SpinTransition& t,
                      double mu_scale,
                      const std::array<double, 3>* axis = nullptr);

// Eq.-9-style scaling estimate for the half-space flip rate,
// 100 s^-1 (mu/muB)^2 (T/300K) / [(rho/rho_Cu)(h/um)]. A non-zero
// omega_larmor applies the skin-depth bracket, which is what produces
// the w_L^{-3/2} falloff beyond the crossover.
double nearfield_flip_estimate(double mu_ratio, double temperature,
                               double resistivity, double h,
                               double omega_larmor = 0.0,
                               WarningLog* warnings = nullptr);

// 1 s^-1 (mu/muB)^2 / (h/um)^2 * (S_I/SN_I) * (I/A)
double current_flip_estimate(double current, double h, double noise_ratio,
                             double mu_ratio = 1.0);

// Exponential decay rate of the qubit off-diagonal element,
// delta_mu^2 S_par(r;0) / (2 hbar^2)
double dephasing_rate(double delta_mu, double s_parallel_zero);

// Gamma_{0->1} = (mu_par^2/hbar^2) (a/l_c)^2 S_par(-Omega); requires the
// strong-confinement regime a << l_c
double heating_rate_01(double s_parallel, double ground_size, double l_c,
                       double mu_parallel, WarningLog* warnings = nullptr);

// 1 s^-1 (mu/muB)^2 (T/300K) / [(M/amu)(Omega/2pi 100kHz)(rho/rho_Cu)(h/um)^3]
double nearfield_heating_estimate(double mu_ratio, double temperature,
                                  double mass, double omega_trap,
                                  double resistivity, double h);

// Gamma_{0->1} = M Omega^3 S_h(-Omega) / (2 hbar) for trap-position noise
double displacement_heating(double mass, double omega_trap, double s_height);

// 3 s^-1 (M/amu)(Omega/2pi 100kHz)^3 (I/A)/(B_b/G)^2 * (S_I/SN_I)
double displacement_heating_estimate(double mass, double omega_trap,
                                     double current, double bias_field,
                                     double noise_ratio);

// Gamma_{0->2} = S_Omega(-2 Omega) / 2 for trap-frequency noise; the
// dephasing of vibrational superpositions has the same magnitude
double parametric_heating(double s_omega);

// 3e-8 s^-1 (Omega/2pi 100kHz)^2 / (I/A) * (S_I(2 Omega)/SN_I)
double parametric_heating_estimate(double omega_trap, double current,
                                   double noise_ratio);

// kB dT/dt = hbar Omega Gamma_{0->1}
double temperature_rise(double omega_trap, double gamma01);

struct RateReport {
    double flip_rate = 0.0;          // golden rule x near-field tensor [1/s]
    double dephasing_rate = 0.0;     // [1/s]
    double heating_01 = 0.0;         // [1/s]
    double heating_02 = 0.0;         // [1/s]
    double temperature_rise = 0.0;   // [K/s]
    std::string dominant_channel;

    // scaling estimates, reported alongside the first-principles numbers
    double flip_estimate = 0.0;          // eq9
    double current_flip_estimate = 0.0;  // eq12
    double heating_estimate = 0.0;       // eq21
    double displacement_estimate = 0.0;  // eq23
    double parametric_estimate = 0.0;    // eq25
    double loss_timescale = 0.0;         // ~2/Gamma_{+F -> +F-1} [s]

    double omega_larmor = 0.0;
    double height = 0.0;
    double correlation_len = 0.0;
};

// Full report for a side guide: golden-rule contractions against the
// near-field tensor (half-space or thin wire per config), plus every
// scaling estimate. `noise_ratio` is S_I/SN_I for the current-noise rows.
RateReport compute_rate_report(const SideGuideConfig& config,
                               double noise_ratio = 1.0,
                               WarningLog* warnings = nullptr);

}  // namespace chipnoise

#endif
