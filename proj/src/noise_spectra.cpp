#include "chipnoise/noise_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chipnoise/bessel.hpp"
#include "chipnoise/constants.hpp"
#include "chipnoise/quadrature.hpp"

namespace chipnoise {

using namespace constants;

NoiseTensor NoiseTensor::diagonal(double s0, double s1, double s2, NoiseAxes ax,
                                  double h, double omega) {
    NoiseTensor t;
    t.axes = ax;
    t.position = h;
    t.frequency = omega;
    t.at(0, 0) = s0;
    t.at(1, 1) = s1;
    t.at(2, 2) = s2;
    return t;
}

NoiseTensor NoiseTensor::isotropic(double s, double h, double omega) {
    return diagonal(s, s, s, NoiseAxes::cartesian_surface, h, omega);
}

namespace {
double unnormalized_density(const ElectronVelocityDist& d, double v) {
    switch (d.kind()) {
        case VelocityDistKind::maxwell: {
            const double s = d.characteristic_velocity();
            const double u = (v - d.drift_velocity()) / s;
            return std::exp(-0.5 * u * u) / (s * std::sqrt(2.0 * pi));
        }
        case VelocityDistKind::fermi_dirac: {
            const double vf = d.characteristic_velocity();
            const double w = d.smearing();
            const double u = v - d.drift_velocity();
            const double arg = (u * u - vf * vf) / (2.0 * vf * w);
            if (arg > 700.0) return 0.0;
            return 1.0 / (std::exp(arg) + 1.0);
        }
        case VelocityDistKind::delta:
            return 0.0;
    }
    return 0.0;
}
}  // namespace

ElectronVelocityDist::ElectronVelocityDist(VelocityDistKind k, double vc,
                                           double drift, double sm)
    : kind_(k), v_char_(vc), drift_(drift), smearing_(sm) {
    if (vc <= 0.0 && k != VelocityDistKind::delta)
        throw std::domain_error("ElectronVelocityDist: characteristic velocity must be > 0");
    if (k == VelocityDistKind::fermi_dirac) {
        if (sm < 0.0)
            throw std::domain_error("ElectronVelocityDist: smearing must be >= 0");
        if (sm == 0.0) smearing_ = 1e-6 * vc;  // numerically sharp box
        norm_ = integrate(
            [this](double v) { return unnormalized_density(*this, v); },
            support_lo(), support_hi(), QuadratureOptions{1e-10, 0.0, 4000});
    }

    // gaussian norm is analytic; delta never integrates its density
}

ElectronVelocityDist ElectronVelocityDist::maxwell(double sigma, double drift) {
    return ElectronVelocityDist(VelocityDistKind::maxwell, sigma, drift, 0.0);
}

ElectronVelocityDist ElectronVelocityDist::fermi_dirac(double v_fermi,
                                                       double smearing,
                                                       double drift) {
    return ElectronVelocityDist(VelocityDistKind::fermi_dirac, v_fermi, drift,
                                smearing);
}

ElectronVelocityDist ElectronVelocityDist::delta(double v0, double drift) {
    return ElectronVelocityDist(VelocityDistKind::delta, v0, drift, 0.0);
}

double ElectronVelocityDist::density(double v) const {
    if (kind_ == VelocityDistKind::delta) return 0.0;
    return unnormalized_density(*this, v) / norm_;
}

double ElectronVelocityDist::support_lo() const {
    switch (kind_) {
        case VelocityDistKind::maxwell: return drift_ - 10.0 * v_char_;
        case VelocityDistKind::fermi_dirac:
            return drift_ - v_char_ - 40.0 * smearing_;
        case VelocityDistKind::delta: return delta_velocity();
    }
    return 0.0;
}

double ElectronVelocityDist::support_hi() const {
    switch (kind_) {
        case VelocityDistKind::maxwell: return drift_ + 10.0 * v_char_;
        case VelocityDistKind::fermi_dirac:
            return drift_ + v_char_ + 40.0 * smearing_;
        case VelocityDistKind::delta: return delta_velocity();
    }
    return 0.0;
}

double fermi_edge_smearing(double v_fermi, double electron_temperature) {
    if (v_fermi <= 0.0)
        throw std::domain_error("fermi_edge_smearing: v_fermi must be > 0");
    return kB * electron_temperature / (m_e * v_fermi);
}

CorrelationModel CorrelationModel::nearfield(double h, double reference_value) {
    if (h <= 0.0)
        throw std::domain_error("CorrelationModel::nearfield: h must be > 0");
    CorrelationModel m;
    m.form_ = Form::nearfield_exact;
    m.scale_ = h;
    m.nominal_length_ = 4.0 * h / std::sqrt(3.0);
    m.reference_value_ = reference_value;
    return m;
}

CorrelationModel CorrelationModel::lorentzian(double l_c, double reference_value) {
    if (l_c <= 0.0)
        throw std::domain_error("CorrelationModel::lorentzian: l_c must be > 0");
    CorrelationModel m;
    m.form_ = Form::lorentzian;
    m.scale_ = l_c;
    m.nominal_length_ = l_c;
    m.reference_value_ = reference_value;
    return m;
}

CorrelationModel CorrelationModel::tabulated(std::vector<double> s,
                                             std::vector<double> c,
                                             double reference_value) {
    if (s.size() != c.size() || s.size() < 3)
        throw std::invalid_argument("CorrelationModel::tabulated: need >= 3 samples");
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] <= s[i - 1])
            throw std::invalid_argument("CorrelationModel::tabulated: s must increase");
    CorrelationModel m;
    m.form_ = Form::tabulated;
    m.scale_ = s.back();
    m.nominal_length_ = s.back();
    m.reference_value_ = reference_value;
    m.tab_s_ = std::move(s);
    m.tab_c_ = std::move(c);
    return m;
}

double CorrelationModel::operator()(double s) const {
    s = std::abs(s);
    switch (form_) {
        case Form::nearfield_exact:
            return nearfield_correlation(s, scale_);
        case Form::lorentzian:
            return scale_ * scale_ / (s * s + scale_ * scale_);
        case Form::tabulated: {
            if (s <= tab_s_.front()) return tab_c_.front();
            if (s >= tab_s_.back()) return tab_c_.back();
            auto it = std::upper_bound(tab_s_.begin(), tab_s_.end(), s);
            const std::size_t i = static_cast<std::size_t>(it - tab_s_.begin());
            const double f = (s - tab_s_[i - 1]) / (tab_s_[i] - tab_s_[i - 1]);
            return tab_c_[i - 1] + f * (tab_c_[i] - tab_c_[i - 1]);
        }
    }
    return 0.0;
}

NoiseTensor halfspace_spectrum(const Material& material, double h, double omega,
                               bool bose_einstein, WarningLog* warnings) {
    if (h <= 0.0)
        throw std::domain_error("halfspace_spectrum: height must be > 0");
    const double w = std::abs(omega);
    if (w * h / c_light > 0.1)
        warn(warnings, "halfspace_spectrum: omega*h/c = " +
                           std::to_string(w * h / c_light) +
                           " is not << 1; the quasi-static form is unreliable");
    double thermal = kB * material.temperature;
    if (bose_einstein && w > 0.0) {
        const double x = hbar * w / (kB * std::max(material.temperature, 1e-300));
        thermal = hbar * w / (1.0 - std::exp(-x));
    }
    const double prefactor =
        mu0 * mu0 * thermal / (16.0 * pi * material.resistivity) / h;
    const double delta = skin_depth(material.resistivity, w);
    double bracket = 1.0;
    if (std::isfinite(delta)) {
        const double r = h / delta;
        bracket = 1.0 / (1.0 + 2.0 / 3.0 * r * r * r);
    }
    const double s = prefactor * bracket;
    return NoiseTensor::diagonal(0.5 * s, s, 0.5 * s,
                                 NoiseAxes::cartesian_surface, h, omega);
}

NoiseTensor thin_wire_spectrum(const Material& material, double radius, double h,
                               double omega, WarningLog* warnings) {
    if (h <= 0.0)
        throw std::domain_error("thin_wire_spectrum: height must be > 0");
    if (radius <= 0.0)
        throw std::domain_error("thin_wire_spectrum: radius must be > 0");
    if (radius >= h)
        throw std::domain_error("thin_wire_spectrum: requires radius < h");
    if (radius > h / 3.0)
        warn(warnings, "thin_wire_spectrum: radius > h/3; thin-wire form assumes a << h");
    const double delta = skin_depth(material.resistivity, std::abs(omega));
    if (h > delta / 3.0)
        warn(warnings,
             "thin_wire_spectrum: h is not << skin depth; the magnetostatic "
             "result has no skin-depth correction and overestimates the noise");
    const double prefactor =
        mu0 * mu0 * kB * material.temperature / (16.0 * pi * material.resistivity);
    const double geom = pi * radius * radius / (h * h * h);
    const double s = prefactor * geom;
    return NoiseTensor::diagonal(2.0 * s, 0.5 * s, 1.5 * s,
                                 NoiseAxes::cylindrical_wire, h, omega);
}

double shot_noise_level(double current) {
    if (current < 0.0)
        throw std::domain_error("shot_noise_level: current must be >= 0");
    return e_charge * current;
}

double current_noise_field_spectrum(double current, double h, double noise_ratio) {
    if (h <= 0.0)
        throw std::domain_error("current_noise_field_spectrum: height must be > 0");
    if (noise_ratio < 0.0)
        throw std::domain_error("current_noise_field_spectrum: noise ratio must be >= 0");
    return mu0 * mu0 * e_charge * current / (4.0 * pi * pi * h * h) * noise_ratio;
}

double shot_noise_spectrum(double current, double r, double rp, double dz,
                           double omega, const ElectronVelocityDist& dist,
                           double rel_tol) {
    if (r <= 0.0 || rp <= 0.0)
        throw std::domain_error("shot_noise_spectrum: radii must be > 0");
    const double prefactor =
        mu0 * mu0 * e_charge * current / (4.0 * pi * pi * r * rp);
    const double w = std::abs(omega);

    auto pulse_overlap = [&](double v) {
        const double av = std::abs(v);
        if (av == 0.0) return 0.0;
        const double q = w / av;
        const double bess = xk1(r * q) * xk1(rp * q);
        if (bess == 0.0) return 0.0;
        return std::cos(dz * omega / v) * bess;
    };

    if (dist.kind() == VelocityDistKind::delta) {
        const double v0 = dist.delta_velocity();
        if (v0 == 0.0)
            throw std::domain_error("shot_noise_spectrum: delta distribution at v = 0");
        return prefactor * pulse_overlap(v0);
    }

    const double lo = dist.support_lo();
    const double hi = dist.support_hi();
    auto integrand = [&](double v) { return dist.density(v) * pulse_overlap(v); };

    // Ranges of |v| where the Bessel cutoff turns on, plus the Fermi
    // edges, need explicit panel boundaries or the adaptive pass can
    // step straight over them.
    std::vector<double> brk;
    const double rmax = std::max(r, rp);
    if (w > 0.0) {
        for (double m : {0.01, 0.1, 1.0, 10.0}) {
            brk.push_back(w * rmax * m);
            brk.push_back(-w * rmax * m);
        }
        brk.push_back(0.0);
    }
    if (dist.kind() == VelocityDistKind::fermi_dirac) {
        const double vf = dist.characteristic_velocity();
        const double vd = dist.drift_velocity();
        for (double e : {vd - vf, vd + vf}) brk.push_back(e);
    }

    // electrons slower than this produce exponentially negligible pulses
    const double v_cut = w * std::min(r, rp) / 45.0;
    double value = 0.0;
    QuadratureOptions opt{0.2 * rel_tol, 0.0, 4000};
    if (v_cut > 0.0 && lo < -v_cut)
        value += integrate_segmented(integrand, lo, -v_cut, brk, opt);
    if (v_cut > 0.0 && hi > v_cut)
        value += integrate_segmented(integrand, std::max(lo, v_cut), hi, brk, opt);
    if (v_cut == 0.0)
        value = integrate_segmented(integrand, lo, hi, brk, opt);
    return prefactor * value;
}

double nearfield_correlation(double s, double h) {
    if (h <= 0.0)
        throw std::domain_error("nearfield_correlation: height must be > 0");
    const double u = std::sqrt(s * s + 4.0 * h * h);
    return 8.0 * h * h / ((2.0 * h + u) * u);
}

double correlation_length(const CorrelationModel& model) {
    // Fit (1 - C)/s^2 = k0 + k1 s^2 over s in (0, scale/4]; the intercept
    // k0 = 1/l_c^2 is unbiased through the s^4 term of C.
    const double smax = model.scale() / 4.0;
    const int n = 48;
    double sx0 = 0, sx1 = 0, sx2 = 0, sy0 = 0, sy1 = 0;
    for (int i = 1; i <= n; ++i) {
        const double s = smax * i / n;
        const double g = (1.0 - model(s)) / (s * s);
        const double x = s * s;
        sx0 += 1.0;
        sx1 += x;
        sx2 += x * x;
        sy0 += g;
        sy1 += g * x;
    }
    const double det = sx0 * sx2 - sx1 * sx1;
    const double k0 = (sy0 * sx2 - sy1 * sx1) / det;
    const double flat_floor = 1e-10 / (model.scale() * model.scale());
    if (std::abs(k0) < flat_floor)
        return std::numeric_limits<double>::infinity();
    if (k0 < 0.0)
        throw std::domain_error(
            "correlation_length: C(s) is not concave at the origin");
    return 1.0 / std::sqrt(k0);
}

}  // namespace chipnoise
