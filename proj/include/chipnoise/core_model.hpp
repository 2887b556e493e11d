#ifndef CHIPNOISE_CORE_MODEL_HPP
#define CHIPNOISE_CORE_MODEL_HPP

#include <string>

#include "chipnoise/errors.hpp"

// Parameter bundles for a wire-based side guide and the derived trap
// geometry. All quantities are SI; all types are immutable value objects
// and every operation is a pure function.

namespace chipnoise {

struct Material {
    double resistivity = 0.0;  // [Ohm m]
    double temperature = 0.0;  // [K]
    std::string label;

    Material() = default;
    Material(double resistivity_ohm_m, double temperature_K, std::string name = "");

    static Material copper(double temperature_K = 300.0);
};

enum class WireKind { half_space, thin_wire };

struct WireGeometry {
    double radius = 0.0;  // [m], used for thin_wire only
    WireKind kind = WireKind::half_space;

    static WireGeometry half_space() { return {0.0, WireKind::half_space}; }
    static WireGeometry thin_wire(double radius_m);
};

struct AtomSpecies {
    double mass = 0.0;              // [kg]
    double mu_parallel = 0.0;       // magnetic moment along the trap field [J/T]
    double delta_mu_parallel = 0.0; // differential moment of the qubit pair [J/T]
    double spin_F = 0.5;            // half-integer
    double g_factor = 2.0;

    AtomSpecies() = default;
    AtomSpecies(double mass_kg, double mu_par, double delta_mu, double F, double gF);
};

// Side guide: wire current plus perpendicular bias field. The field zero
// sits at height h = (mu0/2pi) I / B_b above the wire; a longitudinal
// field keeps the minimum non-zero so the trap is harmonic.
struct SideGuideConfig {
    double current = 0.0;            // [A]
    double bias_field = 0.0;         // [T]
    double longitudinal_field = 0.0; // |B0| at the guide center [T]
    double trap_frequency = 0.0;     // Omega [rad/s]; independent input, never derived
    AtomSpecies atom;
    Material material;
    WireGeometry wire;

    double height() const;          // [m]
    double gradient() const;        // bias_field / height [T/m]
    double larmor() const;          // [rad/s]
    void validate() const;          // throws on violated invariants
};

// h = (mu0 / 2 pi) I / B_b
double guide_height(double current_A, double bias_field_T);

// delta(omega) = sqrt(2 rho / (mu0 omega)); returns +inf at omega = 0
double skin_depth(double resistivity, double omega);

// omega_L = mu_parallel |B0| / hbar
double larmor_frequency(double mu_parallel, double B0);

// rms size of the trap ground state, a = sqrt(hbar / (2 M Omega))
double ground_state_size(double mass, double omega_trap);

// M g / (mu_parallel b); the dephasing-rate suppression from gravitational
// sag is this ratio squared
double sag_suppression_ratio(double mass, double gravity, double mu_parallel,
                             double gradient);

}  // namespace chipnoise

#endif
