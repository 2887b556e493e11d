#ifndef CHIPNOISE_NOISE_SPECTRA_HPP
#define CHIPNOISE_NOISE_SPECTRA_HPP

#include <array>
#include <vector>

#include "chipnoise/core_model.hpp"
#include "chipnoise/errors.hpp"

// Magnetic power-spectral-density and spatial-correlation models:
// thermal near-field noise above a half-space or thin wire, technical
// current noise, and the ballistic-electron shot-noise model.

namespace chipnoise {

// Axis conventions for the 3x3 spectral tensor:
//  cartesian_surface: (x, y, z) with y the surface normal and z along the
//      guide axis; the half-space tensor is diag(1/2, 1, 1/2) times a scalar.
//  cylindrical_wire:  (azimuthal, radial, longitudinal) around the wire.
enum class NoiseAxes { cartesian_surface, cylindrical_wire };

struct NoiseTensor {
    std::array<double, 9> components{};  // row-major S_ab [T^2/Hz]
    NoiseAxes axes = NoiseAxes::cartesian_surface;
    double position = 0.0;   // observation height h [m]
    double frequency = 0.0;  // omega [rad/s]

    double& at(int a, int b) { return components[3 * a + b]; }
    double at(int a, int b) const { return components[3 * a + b]; }
    double trace() const { return at(0, 0) + at(1, 1) + at(2, 2); }

    static NoiseTensor diagonal(double s0, double s1, double s2, NoiseAxes ax,
                                double h, double omega);
    static NoiseTensor isotropic(double s, double h, double omega);
};

enum class VelocityDistKind { maxwell, fermi_dirac, delta };

// Longitudinal electron velocity distribution in the wire. Normalized
// density; the kinds are a gaussian of width `characteristic_velocity`,
// a Fermi-Dirac box of half-width v_F with thermal edge smearing, and a
// single velocity. All are centered on the drift velocity.
class ElectronVelocityDist {
public:
    static ElectronVelocityDist maxwell(double sigma, double drift = 0.0);
    // `smearing` is the edge width in velocity, kB Te / (m_e vF); helper below
    static ElectronVelocityDist fermi_dirac(double v_fermi, double smearing,
                                            double drift = 0.0);
    static ElectronVelocityDist delta(double v0, double drift = 0.0);

    VelocityDistKind kind() const { return kind_; }
    double characteristic_velocity() const { return v_char_; }
    double drift_velocity() const { return drift_; }
    double smearing() const { return smearing_; }

    // normalized P(v); for the delta kind this is only meaningful under
    // an integral and callers special-case it
    double density(double v) const;

    // integration support [lo, hi] outside of which P is negligible
    double support_lo() const;
    double support_hi() const;

    // velocity of the single spike (delta kind only)
    double delta_velocity() const { return drift_ + v_char_; }

private:
    ElectronVelocityDist(VelocityDistKind k, double vc, double drift, double sm);

    VelocityDistKind kind_;
    double v_char_;
    double drift_;
    double smearing_;
    double norm_ = 1.0;
};

// kB Te / (m_e vF): thermal width of the Fermi edge in velocity units
double fermi_edge_smearing(double v_fermi, double electron_temperature);

// Normalized spatial correlation C(s) of the longitudinal field noise,
// with C(0) = 1. `scale` is the trap height for the near-field form and
// the lorentzian length otherwise.
class CorrelationModel {
public:
    enum class Form { nearfield_exact, lorentzian, tabulated };

    static CorrelationModel nearfield(double h, double reference_value = 1.0);
    static CorrelationModel lorentzian(double l_c, double reference_value = 1.0);
    static CorrelationModel tabulated(std::vector<double> s,
                                      std::vector<double> c,
                                      double reference_value = 1.0);

    double operator()(double s) const;

    Form form() const { return form_; }
    double scale() const { return scale_; }
    double nominal_length() const { return nominal_length_; }
    double reference_value() const { return reference_value_; }

private:
    CorrelationModel() = default;

    Form form_ = Form::lorentzian;
    double scale_ = 0.0;           // h (nearfield) or l_c (lorentzian) [m]
    double nominal_length_ = 0.0;  // l_c implied by the form [m]
    double reference_value_ = 1.0; // S_par(r; omega) [T^2/Hz]
    std::vector<double> tab_s_, tab_c_;
};

// Thermal near-field spectrum above a metallic half-space,
// S_ab = mu0^2 kB T / (16 pi rho) * s_ab / h * [1 + 2h^3/(3 delta^3)]^-1
// with s = diag(1/2, 1, 1/2). `bose_einstein` swaps kB T for the full
// occupation-number form hbar w (1 - e^{-hbar w / kB T})^-1 (off by
// default; other surface mechanisms invalidate it at low temperature).
NoiseTensor halfspace_spectrum(const Material& material, double h, double omega,
                               bool bose_einstein = false,
                               WarningLog* warnings = nullptr);

// Magnetostatic thin-wire spectrum, s_ab/h -> (pi a^2/h^3) diag(2, 1/2, 3/2)
// in cylindrical axes. No skin-depth factor: that correction does not
// exist in the magnetostatic approximation, so callers get a warning
// once h grows comparable to delta.
NoiseTensor thin_wire_spectrum(const Material& material, double radius, double h,
                               double omega, WarningLog* warnings = nullptr);

// Shot-noise floor of a current, e I [A^2/Hz]
double shot_noise_level(double current);

// Magnetic spectrum of wire-current noise at height h (azimuthal
// component), mu0^2 e I / (4 pi^2 h^2) * S_I/SN_I  [T^2/Hz]
double current_noise_field_spectrum(double current, double h, double noise_ratio);

// Ballistic-electron shot-noise correlation spectrum between points at
// radii r, r' separated by dz along the wire:
//   S = mu0^2 e I/(4 pi^2 r r') Int dv P(v) cos(dz w/v) xk1(r|w/v|) xk1(r'|w/v|)
// (the real part of the complex pulse-overlap integral).
double shot_noise_spectrum(double current, double r, double rp, double dz,
                           double omega, const ElectronVelocityDist& dist,
                           double rel_tol = 1e-6);

// Near-field correlation along the guide axis,
// C(s; 0) = 8 h^2 / [(2h + sqrt(s^2+4h^2)) sqrt(s^2+4h^2)]
double nearfield_correlation(double s, double h);

// Extracts l_c = sqrt(-2 / C''(0)) by a quadratic fit of 1 - C over
// s in (0, scale/4]. Returns +inf for flat C; throws for C convex at 0.
double correlation_length(const CorrelationModel& model);

}  // namespace chipnoise

#endif
