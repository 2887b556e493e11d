#ifndef CHIPNOISE_GPE_HPP
#define CHIPNOISE_GPE_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "chipnoise/errors.hpp"
#include "chipnoise/fft.hpp"

// Stochastic 1D mean-field condensate simulation,
//   i d psi/dt = -1/2 d^2 psi/dz^2 + V(z,t) psi + g |psi|^2 psi,
// in harmonic-oscillator units (hbar = M = initial trap frequency = 1).
// The noise potential is white in time with lorentzian spatial
// correlations, calibrated so the golden-rule scattering rate equals a
// requested gamma. Realizations are independent and bit-reproducible:
// the stream of realization r depends only on (seed, r).

namespace chipnoise {

struct CondensateConfig {
    double g = 0.0;          // interaction strength, 2 hbar Omega a_s
    double gamma = 0.0;      // total scattering rate
    double l_c = 0.31622776601683794;  // noise correlation length
    int n_realizations = 500;
    int n_z = 1024;
    double box_length = 40.0;
    double dt = 1e-4;
    double t_final = 0.5;
    std::vector<double> snapshot_times;  // defaults to {t_final}
    std::uint64_t seed = 1;
    int n_threads = 0;   // 0: CHIPNOISE_THREADS env or hardware count
    double s_max = 0.0;  // coherence window; 0: box_length/4

    void validate() const;  // throws ConfigError
};

struct CondensateState {
    std::vector<std::complex<double>> psi;
    double box_length = 0.0;

    int n() const { return static_cast<int>(psi.size()); }
    double dz() const { return box_length / n(); }
    double z_at(int i) const { return (i - n() / 2) * dz(); }
    double norm() const;       // Int |psi|^2 dz
    double rms_width() const;  // sqrt(<z^2>)
};

// Correlated noise slices: independent between steps (temporal
// whiteness), variance scaled as gamma/dt, spatial spectrum filtered by
// the square root of the lorentzian transform ~ e^{-|k| l_c / 2}.
class NoiseGenerator {
public:
    NoiseGenerator(int n_z, double box_length, double l_c, double gamma,
                   double dt, std::uint64_t seed);

    // draws a fresh V(z) for one time step
    const std::vector<double>& next();
    const std::vector<double>& current() const { return slice_; }

private:
    double gauss();

    int n_;
    double amplitude_;  // sqrt(gamma / dt)
    std::vector<double> filter_;
    std::vector<double> slice_;
    std::vector<std::complex<double>> work_;
    Fft1D fft_;
    std::uint64_t rng_state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Ground state of V = trap_omega^2 z^2 / 2 plus the mean field, by
// imaginary-time split-step relaxation. Throws NumericalError when the
// chemical potential fails to settle.
CondensateState gpe_ground_state(double g, int n_z, double box_length,
                                 double trap_omega = 1.0,
                                 double* chemical_potential = nullptr);

// Split-step spectral evolution for n_steps of dt. `noise` (optional)
// supplies one fresh slice per step; `static_potential` (optional, size
// n_z) is added every step. Norm is conserved by construction; NaNs
// abort with the offending step index.
void evolve_gpe(CondensateState& state, NoiseGenerator* noise,
                const std::vector<double>* static_potential, double g,
                double dt, int n_steps);

struct EnsembleResult {
    std::vector<double> s_grid;  // separations >= 0
    std::vector<double> times;   // actual snapshot times (multiples of dt)
    // row-major [time][s]; complex ensemble mean of rho, its standard
    // errors per component, and the mean of |rho| with its own error
    std::vector<double> mean_re, mean_im, stderr_re, stderr_im;
    std::vector<double> mean_abs, stderr_abs;
    std::vector<double> norm_per_time;  // ensemble mean of rho(0)
    int n_realizations = 0;
    double wall_seconds = 0.0;

    std::size_t idx(std::size_t t, std::size_t s) const {
        return t * s_grid.size() + s;
    }
};

// Runs the full ensemble: ground state in the trap, trap released at
// t = 0, independent noisy trajectories, complex coherence averaged over
// realizations. Deterministic for a fixed config regardless of thread
// scheduling.
EnsembleResult run_ensemble(const CondensateConfig& config);

}  // namespace chipnoise

#endif
