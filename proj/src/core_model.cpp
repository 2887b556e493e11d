#include "chipnoise/core_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "chipnoise/constants.hpp"

namespace chipnoise {

using namespace constants;

Material::Material(double resistivity_ohm_m, double temperature_K, std::string name)
    : resistivity(resistivity_ohm_m), temperature(temperature_K), label(std::move(name)) {
    if (resistivity <= 0.0)
        throw std::domain_error("Material: resistivity must be > 0");
    if (temperature < 0.0)
        throw std::domain_error("Material: temperature must be >= 0");
}

Material Material::copper(double temperature_K) {
    return Material(rho_copper, temperature_K, "Cu");
}

WireGeometry WireGeometry::thin_wire(double radius_m) {
    if (radius_m <= 0.0)
        throw std::domain_error("WireGeometry: thin wire radius must be > 0");
    return {radius_m, WireKind::thin_wire};
}

AtomSpecies::AtomSpecies(double mass_kg, double mu_par, double delta_mu, double F, double gF)
    : mass(mass_kg), mu_parallel(mu_par), delta_mu_parallel(delta_mu),
      spin_F(F), g_factor(gF) {
    if (mass <= 0.0)
        throw std::domain_error("AtomSpecies: mass must be > 0");
    const double twoF = 2.0 * F;
    if (F <= 0.0 || std::abs(twoF - std::round(twoF)) > 1e-9)
        throw std::domain_error("AtomSpecies: spin_F must be a positive half-integer");
}

double SideGuideConfig::height() const {
    return guide_height(current, bias_field);
}

double SideGuideConfig::gradient() const {
    return bias_field / height();
}

double SideGuideConfig::larmor() const {
    return larmor_frequency(atom.mu_parallel, longitudinal_field);
}

void SideGuideConfig::validate() const {
    if (current <= 0.0)
        throw std::domain_error("SideGuideConfig: current must be > 0");
    if (bias_field <= 0.0)
        throw std::domain_error("SideGuideConfig: bias_field must be > 0");
    if (wire.kind == WireKind::thin_wire && height() <= wire.radius)
        throw std::domain_error("SideGuideConfig: derived height must exceed wire radius");
    if (longitudinal_field < 0.0)
        throw std::domain_error("SideGuideConfig: longitudinal_field must be >= 0");
    if (trap_frequency < 0.0)
        throw std::domain_error("SideGuideConfig: trap_frequency must be >= 0");
}

double guide_height(double current_A, double bias_field_T) {
    if (current_A <= 0.0 || bias_field_T <= 0.0)
        throw std::domain_error("guide_height: current and bias field must be > 0");
    return mu0 / two_pi * current_A / bias_field_T;
}

double skin_depth(double resistivity, double omega) {
    if (resistivity <= 0.0)
        throw std::domain_error("skin_depth: resistivity must be > 0");
    if (omega < 0.0)
        throw std::domain_error("skin_depth: omega must be >= 0");
    if (omega == 0.0)
        return std::numeric_limits<double>::infinity();
    return std::sqrt(2.0 * resistivity / (mu0 * omega));
}

double larmor_frequency(double mu_parallel, double B0) {
    if (B0 < 0.0)
        throw std::domain_error("larmor_frequency: field magnitude must be >= 0");
    return mu_parallel * B0 / hbar;
}

double ground_state_size(double mass, double omega_trap) {
    if (mass <= 0.0 || omega_trap <= 0.0)
        throw std::domain_error("ground_state_size: mass and trap frequency must be > 0");
    return std::sqrt(hbar / (2.0 * mass * omega_trap));
}

double sag_suppression_ratio(double mass, double gravity, double mu_parallel,
                             double gradient) {
    if (gradient <= 0.0)
        throw std::domain_error("sag_suppression_ratio: gradient must be > 0");
    return mass * gravity / (mu_parallel * gradient);
}

}  // namespace chipnoise
