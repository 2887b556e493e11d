#include "chipnoise/transport.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "chipnoise/bessel.hpp"
#include "chipnoise/constants.hpp"
#include "chipnoise/fft.hpp"
#include "chipnoise/quadrature.hpp"

namespace chipnoise {

using constants::pi;
using constants::two_pi;
using cplx = std::complex<double>;
using MatrixRM =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

WignerState::WignerState(int nz, int np, double L, double M, double hbar_)
    : n_z(nz), n_p(np), box_length(L), mass(M), hbar(hbar_) {
    if (nz < 2 || np < 2)
        throw std::invalid_argument("WignerState: grid must have >= 2 points");
    if (L <= 0.0 || M <= 0.0 || hbar_ <= 0.0)
        throw std::invalid_argument("WignerState: L, mass, hbar must be > 0");
    values.assign(static_cast<std::size_t>(nz) * np, 0.0);
}

double WignerState::dp() const { return hbar * two_pi / box_length; }

double WignerState::norm() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * dz() * dp();
}

double WignerState::min_value() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : values) m = std::min(m, v);
    return m;
}

WignerState WignerState::gaussian(int nz, int np, double L, double M,
                                  double hbar_, double sigma_z, double sigma_p,
                                  double z0, double p0) {
    if (sigma_z <= 0.0 || sigma_p <= 0.0)
        throw std::invalid_argument("WignerState::gaussian: widths must be > 0");
    WignerState w(nz, np, L, M, hbar_);
    for (int j = 0; j < np; ++j) {
        const double up = (w.p_at(j) - p0) / sigma_p;
        const double gp = std::exp(-0.5 * up * up);
        for (int i = 0; i < nz; ++i) {
            const double uz = (w.z_at(i) - z0) / sigma_z;
            w.at(j, i) = gp * std::exp(-0.5 * uz * uz);
        }
    }
    const double n = w.norm();
    for (double& v : w.values) v /= n;
    return w;
}

ScatteringKernel ScatteringKernel::from_correlation(const CorrelationModel& corr,
                                                    double gamma, int n_p,
                                                    double box_length,
                                                    double rel_tol) {
    if (gamma < 0.0)
        throw std::domain_error("ScatteringKernel: gamma must be >= 0");
    if (n_p < 2 || box_length <= 0.0)
        throw std::invalid_argument("ScatteringKernel: bad grid");
    ScatteringKernel k;
    k.q_grid.resize(n_p);
    k.dgamma_dq.assign(n_p, 0.0);
    k.weights.assign(n_p, 0.0);
    const double dq = two_pi / box_length;
    // evaluate the even transform once per |q|; the unpaired extreme
    // negative bin stays empty so the kernel is exactly symmetric
    for (int j = 0; j < n_p; ++j) k.q_grid[j] = (j - n_p / 2) * dq;
    if (gamma > 0.0) {
        const double plateau = differential_rate_generic(corr, gamma, 0.0, rel_tol);
        for (int m = 0; m <= n_p / 2 - 1; ++m) {
            const double q = m * dq;
            double val = m == 0 ? plateau
                                : differential_rate_generic(corr, gamma, q, rel_tol);
            // below ~1e-14 of the plateau the transform is cancellation
            // noise; cut the tail there to keep every weight >= 0
            if (!(val > 1e-14 * plateau)) break;
            const int jp = n_p / 2 + m;
            const int jm = n_p / 2 - m;
            k.dgamma_dq[jp] = val;
            if (m > 0) k.dgamma_dq[jm] = val;
        }
        for (int j = 0; j < n_p; ++j) k.weights[j] = k.dgamma_dq[j] * dq;
    }
    double tot = 0.0;
    for (double w : k.weights) tot += w;
    k.gamma_total = tot;
    return k;
}

double differential_rate_generic(const CorrelationModel& corr, double gamma,
                                 double q, double rel_tol) {
    if (gamma < 0.0)
        throw std::domain_error("differential_rate_generic: gamma must be >= 0");
    if (gamma == 0.0) return 0.0;
    const double scale = corr.scale();
    return gamma / pi *
           fourier_cos_integral([&](double s) { return corr(s); }, q, scale,
                                rel_tol);
}

double shot_scattering_rate(double mu_parallel, double alpha, double current,
                            double h) {
    if (h <= 0.0)
        throw std::domain_error("shot_scattering_rate: height must be > 0");
    const double c = std::cos(alpha);
    const double mu_term = mu_parallel * c / constants::hbar;
    return mu_term * mu_term * constants::mu0 * constants::mu0 *
           constants::e_charge * current / (4.0 * pi * pi * h * h);
}

double differential_rate_shot(double q, const TransportParams& params,
                              double mu_parallel, double current, double h) {
    if (h <= 0.0)
        throw std::domain_error("differential_rate_shot: height must be > 0");
    if (params.mass <= 0.0)
        throw std::domain_error("differential_rate_shot: mass must be > 0");
    if (q == 0.0)
        return std::numeric_limits<double>::infinity();  // forward divergence
    const double gamma_sn =
        shot_scattering_rate(mu_parallel, params.alpha, current, h);
    const double v_atom = params.p_initial / params.mass;
    const double doppler = std::abs(params.p_initial / (params.mass * q));
    const double b = xk1(std::abs(q) * h);
    return gamma_sn * doppler * params.electron_dist.density(v_atom) * b * b;
}

namespace {

// exp(M) for entrywise-nonnegative M via plain Taylor summation with
// scaling and squaring; every intermediate is nonnegative, so the result
// is a positivity-preserving propagator in floating point too.
Eigen::MatrixXd expm_nonneg(const Eigen::MatrixXd& M) {
    const double norm1 = M.colwise().sum().maxCoeff();
    int s = 0;
    double scale = 1.0;
    while (norm1 * scale > 0.5) {
        scale *= 0.5;
        ++s;
    }
    const Eigen::MatrixXd B = M * scale;
    const int n = static_cast<int>(M.rows());
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd sum = term;
    for (int k = 1; k <= 30; ++k) {
        term = (term * B) / static_cast<double>(k);
        sum += term;
        if (term.maxCoeff() < 1e-18) break;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

// Shear acting on the complex-valued working copy. Keeping the state
// complex across sub-steps lets the per-step phases compose exactly
// (projecting to the real part every sub-step damages the Nyquist mode,
// which no longer rotates but decays).
void shear_step(Eigen::Ref<MatrixRM> re, Eigen::Ref<MatrixRM> im,
                const WignerState& w, double tau, const Fft1D& fft,
                std::vector<cplx>& row, const std::vector<double>& kz) {
    for (int j = 0; j < w.n_p; ++j) {
        const double d = w.p_at(j) * tau / w.mass;
        for (int i = 0; i < w.n_z; ++i) row[i] = cplx(re(j, i), im(j, i));
        fft.forward(row.data());
        for (int i = 0; i < w.n_z; ++i) {
            const double phase = -kz[i] * d;
            row[i] *= cplx(std::cos(phase), std::sin(phase));
        }
        fft.inverse(row.data());
        for (int i = 0; i < w.n_z; ++i) {
            re(j, i) = row[i].real();
            im(j, i) = row[i].imag();
        }
    }
}

}  // namespace

void evolve_master(WignerState& state, const ScatteringKernel& kernel, double t,
                   double dt) {
    if (t < 0.0 || dt <= 0.0)
        throw ConfigError("evolve_master: t >= 0 and dt > 0 required");
    if (static_cast<int>(kernel.weights.size()) != state.n_p)
        throw ConfigError("evolve_master: kernel grid does not match the state");
    const double gamma = kernel.gamma_total;
    if (gamma > 0.0 && dt > 0.1 / gamma + 1e-15)
        throw ConfigError("evolve_master: dt exceeds 0.1/gamma");
    const double p_max = (state.n_p / 2) * state.dp();
    const double advection_bound = 0.2 * state.dz() * state.mass / p_max;
    if (dt > advection_bound * (1.0 + 1e-12))
        throw ConfigError("evolve_master: dt exceeds the advection bound "
                          "0.2 dz M / p_max");
    if (t == 0.0) return;

    const int n_steps = static_cast<int>(std::ceil(t / dt - 1e-12));
    const double dt_eff = t / n_steps;

    // dense scattering generator over the q bins: gain minus loss
    const int np = state.n_p;
    Eigen::MatrixXd gain = Eigen::MatrixXd::Zero(np, np);
    for (int m = 0; m < np; ++m) {
        const int shift = m - np / 2;
        const double w = kernel.weights[m];
        if (w == 0.0) continue;
        for (int j = 0; j < np; ++j) {
            const int src = ((j + shift) % np + np) % np;
            gain(j, src) += w;
        }
    }
    const Eigen::MatrixXd propagator =
        std::exp(-gamma * dt_eff) * expm_nonneg(gain * dt_eff);

    Fft1D fft(state.n_z);
    std::vector<cplx> row(static_cast<std::size_t>(state.n_z));
    std::vector<double> kz(static_cast<std::size_t>(state.n_z));
    for (int i = 0; i < state.n_z; ++i) {
        const int f = (i <= state.n_z / 2) ? i : i - state.n_z;
        kz[i] = two_pi / state.box_length * f;
    }

    Eigen::Map<MatrixRM> W(state.values.data(), np, state.n_z);
    MatrixRM re = W;
    MatrixRM im = MatrixRM::Zero(np, state.n_z);
    MatrixRM scratch(np, state.n_z);
    for (int step = 0; step < n_steps; ++step) {
        shear_step(re, im, state, 0.5 * dt_eff, fft, row, kz);
        scratch.noalias() = propagator * re;
        re = scratch;
        scratch.noalias() = propagator * im;
        im = scratch;
        shear_step(re, im, state, 0.5 * dt_eff, fft, row, kz);
    }
    W = re;
}

double analytic_coherence(double s, double t, double gamma,
                          const CorrelationModel& corr) {
    return std::exp(-gamma * t * (1.0 - corr(s)));
}

cplx coherence_function(const WignerState& state, double s) {
    // integrate over z first; the phase depends only on p
    cplx total(0.0, 0.0);
    for (int j = 0; j < state.n_p; ++j) {
        double zsum = 0.0;
        const double* vals = &state.values[static_cast<std::size_t>(j) * state.n_z];
        for (int i = 0; i < state.n_z; ++i) zsum += vals[i];
        const double phase = -state.p_at(j) * s / state.hbar;
        total += zsum * cplx(std::cos(phase), std::sin(phase));
    }
    return total * state.dz() * state.dp();
}

cplx coherence_function(const std::vector<cplx>& psi, double box_length,
                        double s) {
    const int n = static_cast<int>(psi.size());
    if (n < 2 || box_length <= 0.0)
        throw std::invalid_argument("coherence_function: bad grid");
    const double dz = box_length / n;
    const double shift = s / dz;
    const double fl = std::floor(shift);
    const int i0 = static_cast<int>(fl);
    const double f = shift - fl;
    cplx total(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        const int ia = ((i + i0) % n + n) % n;
        const int ib = (ia + 1) % n;
        const cplx shifted = (1.0 - f) * psi[ia] + f * psi[ib];
        total += std::conj(shifted) * psi[i];
    }
    return total * dz;
}

}  // namespace chipnoise
