#ifndef CHIPNOISE_TRANSPORT_HPP
#define CHIPNOISE_TRANSPORT_HPP

#include <complex>
#include <vector>

#include "chipnoise/noise_spectra.hpp"

// Spatial decoherence along the guide axis: differential scattering
// rates, the Wigner-representation master equation
//   (d_t + p/M d_z) W = Int dq dG/dq [W(z, p + hbar q) - W(z, p)]
// and the coherence function it decays.
//
// The module is unit-agnostic: pass SI values with hbar_si, or work in
// scaled units with hbar = mass = 1.

namespace chipnoise {

// Phase-space density on a periodic z grid (length L, n_z points) and a
// momentum grid dual to it (spacing hbar 2 pi / L), so that every kernel
// momentum shift lands exactly on a bin.
struct WignerState {
    int n_z = 0;
    int n_p = 0;
    double box_length = 0.0;  // L
    double mass = 1.0;
    double hbar = 1.0;
    std::vector<double> values;  // row-major [p][z]

    WignerState(int nz, int np, double L, double M, double hbar_);

    double dz() const { return box_length / n_z; }
    double dp() const;
    double z_at(int i) const { return (i - n_z / 2) * dz(); }
    double p_at(int j) const { return (j - n_p / 2) * dp(); }
    double& at(int j, int i) { return values[static_cast<std::size_t>(j) * n_z + i]; }
    double at(int j, int i) const { return values[static_cast<std::size_t>(j) * n_z + i]; }

    double norm() const;  // sum * dz * dp
    double min_value() const;

    // gaussian phase-space blob, unit norm
    static WignerState gaussian(int nz, int np, double L, double M, double hbar_,
                                double sigma_z, double sigma_p,
                                double z0 = 0.0, double p0 = 0.0);
};

// dG/dq tabulated on the grid dual to the box, q_k = k 2 pi / L for
// k in [-n_p/2, n_p/2).
struct ScatteringKernel {
    double gamma_total = 0.0;              // sum of weights [1/s]
    std::vector<double> q_grid;            // [rad/m]
    std::vector<double> dgamma_dq;         // [1/s per rad/m]
    std::vector<double> weights;           // dG/dq * dq [1/s]

    // Builds the kernel from a correlation model via the Fourier
    // transform of C. The forward (q ~ 0) divergence of shot-type models
    // never enters: the box regularizes |q| >= 2 pi / L and the total
    // rate comes from C(0) = 1, i.e. gamma itself.
    static ScatteringKernel from_correlation(const CorrelationModel& corr,
                                             double gamma, int n_p,
                                             double box_length,
                                             double rel_tol = 1e-8);
};

struct TransportParams {
    double alpha = 0.0;      // angle between atomic spin and wire field [rad]
    double p_initial = 0.0;  // [kg m/s]
    double mass = 0.0;       // [kg]
    ElectronVelocityDist electron_dist = ElectronVelocityDist::delta(0.0);
};

// dG/dq = gamma Int (ds/2pi) e^{iqs} C(s; 0); real and even in q.
double differential_rate_generic(const CorrelationModel& corr, double gamma,
                                 double q, double rel_tol = 1e-8);

// Shot-noise differential rate for p_i -> p_i + hbar q,
//   gamma_SN (p_i / M q) P(p_i/M) [qh K1(qh)]^2,
// with gamma_SN = mu_par^2 cos^2(alpha)/hbar^2 * mu0^2 e I/(4 pi^2 h^2).
// Returns +inf at q = 0: the forward (Rutherford-like) divergence.
double differential_rate_shot(double q, const TransportParams& params,
                              double mu_parallel, double current, double h);

// gamma_SN above
double shot_scattering_rate(double mu_parallel, double alpha, double current,
                            double h);

// Advances W for total time t in Strang-split steps of dt: exact spectral
// shear in z, alternated with the exact propagator of the q-bin
// scattering integral (a dense matrix in p, nonnegative by construction,
// so positivity and norm are both preserved). Throws ConfigError when dt
// violates dt <= 0.1/gamma or the advection bound 0.2 dz M / p_max.
void evolve_master(WignerState& state, const ScatteringKernel& kernel, double t,
                   double dt);

// exp(-gamma t [1 - C(s; 0)])
double analytic_coherence(double s, double t, double gamma,
                          const CorrelationModel& corr);

// rho(s) = Int dz dp W(z, p) e^{-i p s / hbar}
std::complex<double> coherence_function(const WignerState& state, double s);

// rho(s) = Int dz psi*(z + s) psi(z) on a periodic grid; s is linearly
// interpolated between grid points when not commensurate
std::complex<double> coherence_function(const std::vector<std::complex<double>>& psi,
                                        double box_length, double s);

}  // namespace chipnoise

#endif
