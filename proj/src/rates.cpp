#include "chipnoise/rates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "chipnoise/constants.hpp"

namespace chipnoise {

using namespace constants;
using cplx = std::complex<double>;

namespace {

constexpr double omega_100khz = two_pi * 1e5;

bool is_half_integer(double x) {
    return std::abs(2.0 * x - std::round(2.0 * x)) < 1e-9;
}

int level_index(double F, double m) { return static_cast<int>(std::round(m + F)); }

// rotation taking `axis` to e_z, applied to the tensor: S' = R S R^T
std::array<double, 9> rotate_tensor_to_axis(const NoiseTensor& t,
                                            const std::array<double, 3>& axis) {
    double n[3] = {axis[0], axis[1], axis[2]};
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (len == 0.0)
        throw std::domain_error("spin_flip_rate: quantization axis must be non-zero");
    for (double& x : n) x /= len;

    // orthonormal frame {u, v, n}; R rows are u, v, n so that R n = e_z
    double u[3];
    if (std::abs(n[0]) < 0.9) {
        u[0] = 0.0; u[1] = -n[2]; u[2] = n[1];
    } else {
        u[0] = -n[2]; u[1] = 0.0; u[2] = n[0];
    }
    double ulen = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    for (double& x : u) x /= ulen;
    const double v[3] = {n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2],
                         n[0] * u[1] - n[1] * u[0]};
    const double R[3][3] = {{u[0], u[1], u[2]}, {v[0], v[1], v[2]},
                            {n[0], n[1], n[2]}};
    std::array<double, 9> out{};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            double s = 0.0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    s += R[a][i] * t.at(i, j) * R[b][j];
            out[3 * a + b] = s;
        }
    return out;
}

}  // namespace

SpinTransition::SpinTransition(double F_, double mi, double mf, double gF)
    : F(F_), m_initial(mi), m_final(mf), g_factor(gF) {
    if (F <= 0.0 || !is_half_integer(F))
        throw std::domain_error("SpinTransition: F must be a positive half-integer");
    if (!is_half_integer(mi) || !is_half_integer(mf))
        throw std::domain_error("SpinTransition: m values must be half-integers");
    if (std::abs(mi) > F + 1e-9 || std::abs(mf) > F + 1e-9)
        throw std::domain_error("SpinTransition: |m| must be <= F");
}

std::vector<cplx> angular_momentum_matrix(double F, int axis) {
    if (F <= 0.0 || !is_half_integer(F))
        throw std::domain_error("angular_momentum_matrix: bad F");
    const int dim = static_cast<int>(std::round(2.0 * F)) + 1;
    std::vector<cplx> M(static_cast<std::size_t>(dim) * dim, cplx(0.0, 0.0));
    auto at = [&](int r, int c) -> cplx& { return M[static_cast<std::size_t>(r) * dim + c]; };
    for (int i = 0; i < dim; ++i) {
        const double m = -F + i;
        if (axis == 2) {
            at(i, i) = m;
            continue;
        }
        // <m+1|F+|m> = sqrt(F(F+1) - m(m+1)); F- is the adjoint
        if (i + 1 < dim) {
            const double cp = std::sqrt(F * (F + 1.0) - m * (m + 1.0));
            if (axis == 0) {
                at(i + 1, i) += 0.5 * cp;
                at(i, i + 1) += 0.5 * cp;
            } else {
                at(i + 1, i) += cplx(0.0, -0.5) * cp;
                at(i, i + 1) += cplx(0.0, 0.5) * cp;
            }
        }
    }
    return M;
}

double spin_flip_rate(const NoiseTensor& tensor, const SpinTransition& t,
                      double mu_scale, const std::array<double, 3>* axis) {
    if (!t.allowed()) return 0.0;

    std::array<double, 9> S = tensor.components;
    if (axis) S = rotate_tensor_to_axis(tensor, *axis);

    const int dim = static_cast<int>(std::round(2.0 * t.F)) + 1;
    const int i = level_index(t.F, t.m_initial);
    const int f = level_index(t.F, t.m_final);
    cplx elem[3];
    for (int a = 0; a < 3; ++a) {
        const auto M = angular_momentum_matrix(t.F, a);
        elem[a] = M[static_cast<std::size_t>(i) * dim + f];  // <i|F_a|f>
    }
    const double mu2 = t.g_factor * t.g_factor * mu_scale * mu_scale;
    cplx total(0.0, 0.0);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            total += elem[a] * std::conj(elem[b]) * S[3 * a + b];
    return mu2 * total.real() / (hbar * hbar);
}

double nearfield_flip_estimate(double mu_ratio, double temperature,
                               double resistivity, double h,
                               double omega_larmor, WarningLog* warnings) {
    double rate = 100.0 * mu_ratio * mu_ratio * (temperature / 300.0) /
                  ((resistivity / rho_copper) * (h / 1e-6));
    if (omega_larmor > 0.0) {
        const double delta = skin_depth(resistivity, omega_larmor);
        const double r = h / delta;
        if (r > 1.0 / 3.0)
            warn(warnings, "nearfield_flip_estimate: h is not << skin depth; "
                           "applying the crossover bracket");
        rate /= 1.0 + 2.0 / 3.0 * r * r * r;
    }
    return rate;
}

double current_flip_estimate(double current, double h, double noise_ratio,
                             double mu_ratio) {
    if (h <= 0.0)
        throw std::domain_error("current_flip_estimate: height must be > 0");
    const double hum = h / 1e-6;
    return 1.0 * mu_ratio * mu_ratio / (hum * hum) * noise_ratio * current;
}

double dephasing_rate(double delta_mu, double s_parallel_zero) {
    if (s_parallel_zero < 0.0)
        throw std::domain_error("dephasing_rate: spectrum must be >= 0");
    return delta_mu * delta_mu * s_parallel_zero / (2.0 * hbar * hbar);
}

double heating_rate_01(double s_parallel, double ground_size, double l_c,
                       double mu_parallel, WarningLog* warnings) {
    if (ground_size >= l_c)
        throw std::domain_error(
            "heating_rate_01: requires ground-state size < correlation length");
    if (ground_size > l_c / 3.0)
        warn(warnings, "heating_rate_01: a > l_c/3; strong-confinement "
                       "expansion is marginal");
    const double ratio = ground_size / l_c;
    return mu_parallel * mu_parallel / (hbar * hbar) * ratio * ratio * s_parallel;
}

double nearfield_heating_estimate(double mu_ratio, double temperature,
                                  double mass, double omega_trap,
                                  double resistivity, double h) {
    if (mass <= 0.0 || omega_trap <= 0.0 || h <= 0.0 || resistivity <= 0.0)
        throw std::domain_error("nearfield_heating_estimate: inputs must be > 0");
    const double hum = h / 1e-6;
    return 1.0 * mu_ratio * mu_ratio * (temperature / 300.0) /
           ((mass / amu) * (omega_trap / omega_100khz) *
            (resistivity / rho_copper) * hum * hum * hum);
}

double displacement_heating(double mass, double omega_trap, double s_height) {
    if (s_height < 0.0)
        throw std::domain_error("displacement_heating: spectrum must be >= 0");
    return mass * omega_trap * omega_trap * omega_trap * s_height / (2.0 * hbar);
}

double displacement_heating_estimate(double mass, double omega_trap,
                                     double current, double bias_field,
                                     double noise_ratio) {
    const double o = omega_trap / omega_100khz;
    const double bg = bias_field / 1e-4;
    return 3.0 * (mass / amu) * o * o * o * current / (bg * bg) * noise_ratio;
}

double parametric_heating(double s_omega) {
    if (s_omega < 0.0)
        throw std::domain_error("parametric_heating: spectrum must be >= 0");
    return 0.5 * s_omega;
}

double parametric_heating_estimate(double omega_trap, double current,
                                   double noise_ratio) {
    if (current <= 0.0)
        throw std::domain_error("parametric_heating_estimate: current must be > 0");
    const double o = omega_trap / omega_100khz;
    return 3e-8 * o * o / current * noise_ratio;
}

double temperature_rise(double omega_trap, double gamma01) {
    if (gamma01 < 0.0)
        throw std::domain_error("temperature_rise: rate must be >= 0");
    return hbar * omega_trap * gamma01 / kB;
}

RateReport compute_rate_report(const SideGuideConfig& config, double noise_ratio,
                               WarningLog* warnings) {
    config.validate();
    RateReport rep;
    const double h = config.height();
    const AtomSpecies& atom = config.atom;
    const Material& mat = config.material;
    rep.height = h;
    rep.omega_larmor = config.larmor();
    rep.correlation_len = 4.0 * h / std::sqrt(3.0);

    auto tensor_at = [&](double omega) {
        if (config.wire.kind == WireKind::thin_wire)
            return thin_wire_spectrum(mat, config.wire.radius, h, omega, warnings);
        return halfspace_spectrum(mat, h, omega, false, warnings);
    };

    // Flip out of the top trapped sublevel; the trap field is along the
    // guide, which is the tensor's third axis in either convention.
    const NoiseTensor S_larmor = tensor_at(rep.omega_larmor);
    const SpinTransition top(atom.spin_F, atom.spin_F, atom.spin_F - 1.0,
                             atom.g_factor);
    rep.flip_rate = spin_flip_rate(S_larmor, top, muB);
    rep.loss_timescale = rep.flip_rate > 0.0
        ? (atom.spin_F >= 1.0 ? 2.0 : 1.0) / rep.flip_rate
        : std::numeric_limits<double>::infinity();

    // Dephasing needs the longitudinal component at zero frequency.
    const NoiseTensor S_zero = tensor_at(0.0);
    rep.dephasing_rate = dephasing_rate(atom.delta_mu_parallel, S_zero.at(2, 2));

    if (config.trap_frequency > 0.0) {
        const double a = ground_state_size(atom.mass, config.trap_frequency);
        const NoiseTensor S_trap = tensor_at(config.trap_frequency);
        rep.heating_01 = heating_rate_01(S_trap.at(2, 2), a, rep.correlation_len,
                                         atom.mu_parallel, warnings);
        rep.heating_02 = parametric_heating_estimate(config.trap_frequency,
                                                     config.current, noise_ratio);
        rep.temperature_rise = temperature_rise(config.trap_frequency, rep.heating_01);
        rep.heating_estimate = nearfield_heating_estimate(
            atom.mu_parallel / muB, mat.temperature, atom.mass,
            config.trap_frequency, mat.resistivity, h);
        rep.displacement_estimate = displacement_heating_estimate(
            atom.mass, config.trap_frequency, config.current, config.bias_field,
            noise_ratio);
        rep.parametric_estimate = rep.heating_02;
    }

    rep.flip_estimate = nearfield_flip_estimate(
        atom.mu_parallel / muB, mat.temperature, mat.resistivity, h,
        rep.omega_larmor, warnings);
    rep.current_flip_estimate =
        current_flip_estimate(config.current, h, noise_ratio, atom.mu_parallel / muB);

    const char* label = "spin_flip";
    double best = rep.flip_rate;
    if (rep.dephasing_rate > best) { best = rep.dephasing_rate; label = "dephasing"; }
    if (rep.heating_01 > best) { best = rep.heating_01; label = "heating"; }
    rep.dominant_channel = label;
    return rep;
}

}  // namespace chipnoise
