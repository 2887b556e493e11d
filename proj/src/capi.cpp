#include "chipnoise/chipnoise.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "chipnoise/config.hpp"
#include "chipnoise/constants.hpp"
#include "chipnoise/core_model.hpp"
#include "chipnoise/gpe.hpp"
#include "chipnoise/noise_spectra.hpp"
#include "chipnoise/rates.hpp"
#include "chipnoise/transport.hpp"
#include "chipnoise/version.hpp"

using namespace chipnoise;

namespace {

thread_local std::string g_last_error;
thread_local std::deque<std::string> g_warnings;
thread_local std::string g_warning_slot;

void push_warnings(const WarningLog& log) {
    for (const auto& m : log.messages()) g_warnings.push_back(m);
}

template <class Fn>
chipnoise_status guarded(Fn&& fn) noexcept {
    try {
        fn();
        return CHIPNOISE_OK;
    } catch (const ConfigError& e) {
        g_last_error = e.what();
        return CHIPNOISE_ERROR_CONFIG;
    } catch (const NumericalError& e) {
        g_last_error = e.what();
        return CHIPNOISE_ERROR_NUMERIC;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return CHIPNOISE_ERROR_DOMAIN;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return CHIPNOISE_ERROR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CHIPNOISE_ERROR_NUMERIC;
    } catch (...) {
        g_last_error = "unknown error";
        return CHIPNOISE_ERROR_NUMERIC;
    }
}

chipnoise_status require(bool ok, const char* msg) {
    if (ok) return CHIPNOISE_OK;
    g_last_error = msg;
    return CHIPNOISE_ERROR_INVALID_ARGUMENT;
}

NoiseTensor to_cpp(const chipnoise_noise_tensor& t) {
    NoiseTensor out;
    std::copy(std::begin(t.components), std::end(t.components),
              out.components.begin());
    out.axes = t.axes == CHIPNOISE_AXES_CYLINDRICAL_WIRE
                   ? NoiseAxes::cylindrical_wire
                   : NoiseAxes::cartesian_surface;
    out.position = t.position_m;
    out.frequency = t.omega_rad_s;
    return out;
}

void to_c(const NoiseTensor& t, chipnoise_noise_tensor* out) {
    std::copy(t.components.begin(), t.components.end(), out->components);
    out->axes = t.axes == NoiseAxes::cylindrical_wire
                    ? CHIPNOISE_AXES_CYLINDRICAL_WIRE
                    : CHIPNOISE_AXES_CARTESIAN_SURFACE;
    out->position_m = t.position;
    out->omega_rad_s = t.frequency;
}

ElectronVelocityDist to_cpp(const chipnoise_electron_dist& d) {
    switch (d.kind) {
        case CHIPNOISE_DIST_MAXWELL:
            return ElectronVelocityDist::maxwell(d.characteristic_velocity,
                                                 d.drift_velocity);
        case CHIPNOISE_DIST_FERMI_DIRAC:
            return ElectronVelocityDist::fermi_dirac(
                d.characteristic_velocity, d.smearing, d.drift_velocity);
        case CHIPNOISE_DIST_DELTA:
            return ElectronVelocityDist::delta(d.characteristic_velocity,
                                               d.drift_velocity);
        default:
            throw std::invalid_argument("unknown electron distribution kind");
    }
}

}  // namespace

struct chipnoise_config {
    ChipConfig cfg;
    // scratch for the entry iterator
    mutable std::vector<std::pair<std::string, std::string>> echo_cache;
    void refresh_echo() const {
        echo_cache.clear();
        for (const auto& [k, e] : cfg.entries()) {
            char buf[40];
            if (e.numeric) {
                std::snprintf(buf, sizeof buf, "%.17g", e.si_value);
                echo_cache.emplace_back(k, buf);
            } else {
                echo_cache.emplace_back(k, e.raw);
            }
        }
    }
};

struct chipnoise_decohere_result {
    std::vector<double> s_grid;
    std::vector<double> times;
    std::vector<double> coherence;  // [t][s], normalized magnitude
    std::vector<double> analytic;   // [t][s]
};

struct chipnoise_gpe_result {
    EnsembleResult res;
};

extern "C" {

const char* chipnoise_version(void) { return CHIPNOISE_VERSION_STRING; }

const char* chipnoise_last_error(void) { return g_last_error.c_str(); }

const char* chipnoise_next_warning(void) {
    if (g_warnings.empty()) return nullptr;
    g_warning_slot = g_warnings.front();
    g_warnings.pop_front();
    return g_warning_slot.c_str();
}

void chipnoise_get_constants(chipnoise_constants* out) {
    if (!out) return;
    out->mu0 = constants::mu0;
    out->kB = constants::kB;
    out->hbar = constants::hbar;
    out->e_charge = constants::e_charge;
    out->muB = constants::muB;
    out->amu = constants::amu;
    out->m_e = constants::m_e;
    out->g_grav = constants::g_grav;
    out->rho_copper = constants::rho_copper;
}

chipnoise_status chipnoise_config_parse(const char* path, chipnoise_config** out) {
    if (auto st = require(path && out, "null argument")) return st;
    return guarded([&] {
        auto handle = std::make_unique<chipnoise_config>();
        handle->cfg = ChipConfig::parse_file(path);
        *out = handle.release();
    });
}

chipnoise_status chipnoise_config_parse_string(const char* text,
                                               chipnoise_config** out) {
    if (auto st = require(text && out, "null argument")) return st;
    return guarded([&] {
        auto handle = std::make_unique<chipnoise_config>();
        handle->cfg = ChipConfig::parse_string(text);
        *out = handle.release();
    });
}

chipnoise_status chipnoise_config_create(chipnoise_config** out) {
    if (auto st = require(out != nullptr, "null argument")) return st;
    *out = new chipnoise_config();
    return CHIPNOISE_OK;
}

chipnoise_status chipnoise_config_set(chipnoise_config* cfg,
                                      const char* assignment) {
    if (auto st = require(cfg && assignment, "null argument")) return st;
    return guarded([&] { cfg->cfg.set(assignment); });
}

chipnoise_status chipnoise_config_validate(const chipnoise_config* cfg) {
    if (auto st = require(cfg != nullptr, "null argument")) return st;
    return guarded([&] { cfg->cfg.validate(); });
}

chipnoise_status chipnoise_config_get(const chipnoise_config* cfg,
                                      const char* key, double* out_si) {
    if (auto st = require(cfg && key && out_si, "null argument")) return st;
    return guarded([&] { *out_si = cfg->cfg.get(key); });
}

int chipnoise_config_has(const chipnoise_config* cfg, const char* key) {
    if (!cfg || !key) return 0;
    return cfg->cfg.has(key) ? 1 : 0;
}

size_t chipnoise_config_count(const chipnoise_config* cfg) {
    return cfg ? cfg->cfg.entries().size() : 0;
}

chipnoise_status chipnoise_config_entry(const chipnoise_config* cfg, size_t index,
                                        const char** key, const char** value) {
    if (auto st = require(cfg && key && value, "null argument")) return st;
    return guarded([&] {
        cfg->refresh_echo();
        if (index >= cfg->echo_cache.size())
            throw std::invalid_argument("config entry index out of range");
        *key = cfg->echo_cache[index].first.c_str();
        *value = cfg->echo_cache[index].second.c_str();
    });
}

void chipnoise_config_free(chipnoise_config* cfg) { delete cfg; }

chipnoise_status chipnoise_guide_height(double current_A, double bias_field_T,
                                        double* out_m) {
    if (auto st = require(out_m != nullptr, "null output")) return st;
    return guarded([&] { *out_m = guide_height(current_A, bias_field_T); });
}

chipnoise_status chipnoise_skin_depth(double resistivity_ohm_m,
                                      double omega_rad_s, double* out_m) {
    if (auto st = require(out_m != nullptr, "null output")) return st;
    return guarded([&] { *out_m = skin_depth(resistivity_ohm_m, omega_rad_s); });
}

chipnoise_status chipnoise_larmor_frequency(double mu_parallel_J_T,
                                            double field_T, double* out_rad_s) {
    if (auto st = require(out_rad_s != nullptr, "null output")) return st;
    return guarded([&] { *out_rad_s = larmor_frequency(mu_parallel_J_T, field_T); });
}

chipnoise_status chipnoise_ground_state_size(double mass_kg, double omega_rad_s,
                                             double* out_m) {
    if (auto st = require(out_m != nullptr, "null output")) return st;
    return guarded([&] { *out_m = ground_state_size(mass_kg, omega_rad_s); });
}

chipnoise_status chipnoise_sag_suppression_ratio(double mass_kg, double gravity,
                                                 double mu_parallel_J_T,
                                                 double gradient_T_m,
                                                 double* out) {
    if (auto st = require(out != nullptr, "null output")) return st;
    return guarded([&] {
        *out = sag_suppression_ratio(mass_kg, gravity, mu_parallel_J_T,
                                     gradient_T_m);
    });
}

chipnoise_status chipnoise_halfspace_spectrum(double resistivity_ohm_m,
                                              double temperature_K, double h_m,
                                              double omega_rad_s,
                                              int bose_einstein,
                                              chipnoise_noise_tensor* out) {
    if (auto st = require(out != nullptr, "null output")) return st;
    return guarded([&] {
        WarningLog log;
        const Material mat(resistivity_ohm_m, temperature_K);
        to_c(halfspace_spectrum(mat, h_m, omega_rad_s, bose_einstein != 0, &log),
             out);
        push_warnings(log);
    });
}

chipnoise_status chipnoise_thin_wire_spectrum(double resistivity_ohm_m,
                                              double temperature_K,
                                              double radius_m, double h_m,
                                              double omega_rad_s,
                                              chipnoise_noise_tensor* out) {
    if (auto st = require(out != nullptr, "null output")) return st;
    return guarded([&] {
        WarningLog log;
        const Material mat(resistivity_ohm_m, temperature_K);
        to_c(thin_wire_spectrum(mat, radius_m, h_m, omega_rad_s, &log), out);
        push_warnings(log);
    });
}

chipnoise_status chipnoise_shot_noise_level(double current_A, double* out_A2_Hz) {
    if (auto st = require(out_A2_Hz != nullptr, "null output")) return st;
    return guarded([&] { *out_A2_Hz = shot_noise_level(current_A); });
}

chipnoise_status chipnoise_current_noise_field_spectrum(double current_A,
                                                        double h_m,
                                                        double noise_ratio,
                                                        double* out_T2_Hz) {
    if (auto st = require(out_T2_Hz != nullptr, "null output")) return st;
    return guarded([&] {
        *out_T2_Hz = current_noise_field_spectrum(current_A, h_m, noise_ratio);
    });
}

chipnoise_status chipnoise_shot_noise_spectrum(double current_A, double r_m,
                                               double rp_m, double dz_m,
                                               double omega_rad_s,
                                               const chipnoise_electron_dist* dist,
                                               double* out_T2_Hz) {
    if (auto st = require(dist && out_T2_Hz, "null argument")) return st;
    return guarded([&] {
        *out_T2_Hz = shot_noise_spectrum(current_A, r_m, rp_m, dz_m, omega_rad_s,
                                         to_cpp(*dist));
    });
}

chipnoise_status chipnoise_nearfield_correlation(double s_m, double h_m,
                                                 double* out) {
    if (auto st = require(out != nullptr, "null output")) return st;
    return guarded([&] { *out = nearfield_correlation(s_m, h_m); });
}

chipnoise_status chipnoise_correlation_length_nearfield(double h_m,
                                                        double* out_m) {
    if (auto st = require(out_m != nullptr, "null output")) return st;
    return guarded([&] {
        *out_m = correlation_length(CorrelationModel::nearfield(h_m));
    });
}

chipnoise_status chipnoise_spin_flip_rate(const chipnoise_noise_tensor* tensor,
                                          double F, double m_initial,
                                          double m_final, double g_factor,
                                          double mu_scale_J_T, double* out_rate) {
    if (auto st = require(tensor && out_rate, "null argument")) return st;
    return guarded([&] {
        const SpinTransition t(F, m_initial, m_final, g_factor);
        *out_rate = spin_flip_rate(to_cpp(*tensor), t, mu_scale_J_T);
    });
}

chipnoise_status chipnoise_nearfield_flip_estimate(double mu_ratio,
                                                   double temperature_K,
                                                   double resistivity_ohm_m,
                                                   double h_m,
                                                   double omega_larmor_rad_s,
                                                   double* out_rate) {
    if (auto st = require(out_rate != nullptr, "null output")) return st;
    return guarded([&] {
        WarningLog log;
        *out_rate = nearfield_flip_estimate(mu_ratio, temperature_K,
                                            resistivity_ohm_m, h_m,
                                            omega_larmor_rad_s, &log);
        push_warnings(log);
    });
}

chipnoise_status chipnoise_current_flip_estimate(double current_A, double h_m,
                                                 double noise_ratio,
                                                 double* out_rate) {
    if (auto st = require(out_rate != nullptr, "null output")) return st;
    return guarded([&] {
        *out_rate = current_flip_estimate(current_A, h_m, noise_ratio);
    });
}

chipnoise_status chipnoise_dephasing_rate(double delta_mu_J_T,
                                          double s_parallel_T2_Hz,
                                          double* out_rate) {
    if (auto st = require(out_rate != nullptr, "null output")) return st;
    return guarded([&] {
        *out_rate = dephasing_rate(delta_mu_J_T, s_parallel_T2_Hz);
    });
}

chipnoise_status chipnoise_heating_rate_01(double s_parallel_T2_Hz,
                                           double ground_size_m, double l_c_m,
                                           double mu_parallel_J_T,
                                           double* out_rate) {
    if (auto st = require(out_rate != nullptr, "null output")) return st;
    return guarded([&] {
        WarningLog log;
        *out_rate = heating_rate_01(s_parallel_T2_Hz, ground_size_m, l_c_m,
                                    mu_parallel_J_T, &log);
        push_warnings(log);
    });
}

chipnoise_status chipnoise_nearfield_heating_estimate(
    double mu_ratio, double temperature_K, double mass_kg, double omega_rad_s,
    double resistivity_ohm_m, double h_m, double* out_rate) {
    if (auto st = require(out_rate != nullptr, "null output")) return st;
    return guarded([&] {
        *out_rate = nearfield_heating_estimate(mu_ratio, temperature_K, mass_kg,
                                               omega_rad_s, resistivity_ohm_m,
                                               h_m);
    });
}

chipnoise_status chipnoise_displacement_heating(double mass_kg,
                                                double omega_rad_s,
                                                double s_height_m2_Hz,
                                                double* out_rate) {
    if (auto st = require(out_rate != nullptr, "null output")) return st;
    return guarded([&] {
        *out_rate = displacement_heating(mass_kg, omega_rad_s, s_height_m2_Hz);
    });
}

chipnoise_status chipnoise_displacement_heating_estimate(
    double mass_kg, double omega_rad_s, double current_A, double bias_field_T,
    double noise_ratio, double* out_rate) {
    if (auto st = require(out_rate != nullptr, "null output")) return st;
    return guarded([&] {
        *out_rate = displacement_heating_estimate(mass_kg, omega_rad_s,
                                                  current_A, bias_field_T,
                                                  noise_ratio);
    });
}

chipnoise_status chipnoise_parametric_heating(double s_omega, double* out_rate) {
    if (auto st = require(out_rate != nullptr, "null output")) return st;
    return guarded([&] { *out_rate = parametric_heating(s_omega); });
}

chipnoise_status chipnoise_parametric_heating_estimate(double omega_rad_s,
                                                       double current_A,
                                                       double noise_ratio,
                                                       double* out_rate) {
    if (auto st = require(out_rate != nullptr, "null output")) return st;
    return guarded([&] {
        *out_rate =
            parametric_heating_estimate(omega_rad_s, current_A, noise_ratio);
    });
}

chipnoise_status chipnoise_temperature_rise(double omega_rad_s, double gamma01,
                                            double* out_K_s) {
    if (auto st = require(out_K_s != nullptr, "null output")) return st;
    return guarded([&] { *out_K_s = temperature_rise(omega_rad_s, gamma01); });
}

chipnoise_status chipnoise_compute_rates(const chipnoise_config* cfg,
                                         chipnoise_rate_report* out) {
    if (auto st = require(cfg && out, "null argument")) return st;
    return guarded([&] {
        cfg->cfg.validate();
        WarningLog log;
        const double ratio = cfg->cfg.get_or("current_noise.ratio", 1.0);
        const RateReport rep = compute_rate_report(cfg->cfg.guide(), ratio, &log);
        push_warnings(log);
        out->flip_rate = rep.flip_rate;
        out->dephasing_rate = rep.dephasing_rate;
        out->heating_01 = rep.heating_01;
        out->heating_02 = rep.heating_02;
        out->temperature_rise = rep.temperature_rise;
        out->flip_estimate = rep.flip_estimate;
        out->current_flip_estimate = rep.current_flip_estimate;
        out->heating_estimate = rep.heating_estimate;
        out->displacement_estimate = rep.displacement_estimate;
        out->parametric_estimate = rep.parametric_estimate;
        out->loss_timescale = rep.loss_timescale;
        out->omega_larmor = rep.omega_larmor;
        out->height = rep.height;
        out->correlation_length = rep.correlation_len;
        std::snprintf(out->dominant_channel, sizeof out->dominant_channel, "%s",
                      rep.dominant_channel.c_str());
    });
}

void chipnoise_decohere_params_init(chipnoise_decohere_params* p) {
    if (!p) return;
    p->gamma = 1.0;
    p->l_c = 1.0;
    p->correlation = 0;
    p->n_z = 128;
    p->n_p = 1024;
    p->box_length = 0.0;  // 0: 200 l_c
    p->dt = 0.0;
    p->sigma_z = 0.0;
    p->s_max = 0.0;
}

chipnoise_status chipnoise_decohere_run(const chipnoise_decohere_params* params,
                                        const double* times, size_t n_times,
                                        chipnoise_decohere_result** out) {
    if (auto st = require(params && times && out && n_times > 0,
                          "null argument")) return st;
    return guarded([&] {
        const double l_c = params->l_c;
        if (l_c <= 0.0) throw ConfigError("decohere: l_c must be > 0");
        // auto box: big enough that periodic images of C are negligible,
        // small enough that q_max l_c ~ n_p pi / (L/l_c) resolves the
        // kernel tail
        const double L = params->box_length > 0.0
                             ? params->box_length
                             : std::min(200.0, params->n_p / 6.0) * l_c;
        const CorrelationModel corr =
            params->correlation == 1
                ? CorrelationModel::nearfield(std::sqrt(3.0) * l_c / 4.0)
                : CorrelationModel::lorentzian(l_c);

        WignerState state(params->n_z, params->n_p, L, 1.0, 1.0);
        const double sigma_z =
            params->sigma_z > 0.0 ? params->sigma_z : L / 16.0;
        const double sigma_p = 0.5 / sigma_z;
        state = WignerState::gaussian(params->n_z, params->n_p, L, 1.0, 1.0,
                                      sigma_z, sigma_p);
        const ScatteringKernel kernel = ScatteringKernel::from_correlation(
            corr, params->gamma, params->n_p, L);

        const double p_max = (params->n_p / 2) * state.dp();
        double dt = params->dt;
        if (dt <= 0.0) {
            dt = 0.95 * 0.2 * state.dz() * state.mass / p_max;
            if (params->gamma > 0.0) dt = std::min(dt, 0.095 / params->gamma);
        }

        std::vector<double> ts(times, times + n_times);
        std::sort(ts.begin(), ts.end());

        auto result = std::make_unique<chipnoise_decohere_result>();
        const double s_step = L / params->n_p;
        const double s_max = params->s_max > 0.0 ? params->s_max : 8.0 * l_c;
        const int n_s =
            std::min(params->n_p / 2,
                     static_cast<int>(std::floor(s_max / s_step)) + 1);
        result->s_grid.resize(static_cast<std::size_t>(n_s));
        for (int i = 0; i < n_s; ++i) result->s_grid[i] = i * s_step;
        result->times = ts;

        // initial coherence profile: the exact solution decays it as
        // rho(s, t) = rho(s, 0) exp(-gamma t [1 - C(s)])
        std::vector<double> profile(static_cast<std::size_t>(n_s));
        const double norm_init = std::abs(coherence_function(state, 0.0));
        for (int i = 0; i < n_s; ++i)
            profile[i] =
                std::abs(coherence_function(state, result->s_grid[i])) / norm_init;

        double now = 0.0;
        for (double t : ts) {
            if (t > now) {
                evolve_master(state, kernel, t - now, dt);
                now = t;
            }
            const double norm0 = std::abs(coherence_function(state, 0.0));
            for (int i = 0; i < n_s; ++i) {
                const double s = result->s_grid[i];
                result->coherence.push_back(
                    std::abs(coherence_function(state, s)) / norm0);
                result->analytic.push_back(
                    profile[i] * analytic_coherence(s, t, params->gamma, corr));
            }
        }
        *out = result.release();
    });
}

size_t chipnoise_decohere_n_s(const chipnoise_decohere_result* r) {
    return r ? r->s_grid.size() : 0;
}
size_t chipnoise_decohere_n_times(const chipnoise_decohere_result* r) {
    return r ? r->times.size() : 0;
}
double chipnoise_decohere_s_at(const chipnoise_decohere_result* r, size_t i) {
    return r->s_grid[i];
}
double chipnoise_decohere_time_at(const chipnoise_decohere_result* r, size_t t) {
    return r->times[t];
}
double chipnoise_decohere_coherence(const chipnoise_decohere_result* r, size_t t,
                                    size_t i) {
    return r->coherence[t * r->s_grid.size() + i];
}
double chipnoise_decohere_analytic(const chipnoise_decohere_result* r, size_t t,
                                   size_t i) {
    return r->analytic[t * r->s_grid.size() + i];
}
void chipnoise_decohere_free(chipnoise_decohere_result* r) { delete r; }

void chipnoise_gpe_params_init(chipnoise_gpe_params* p) {
    if (!p) return;
    CondensateConfig defaults;
    p->g = defaults.g;
    p->gamma = defaults.gamma;
    p->l_c = defaults.l_c;
    p->n_realizations = defaults.n_realizations;
    p->n_z = defaults.n_z;
    p->box_length = defaults.box_length;
    p->dt = defaults.dt;
    p->t_final = defaults.t_final;
    p->snapshots = nullptr;
    p->n_snapshots = 0;
    p->seed = defaults.seed;
    p->n_threads = 0;
    p->s_max = 0.0;
}

chipnoise_status chipnoise_gpe_run(const chipnoise_gpe_params* params,
                                   chipnoise_gpe_result** out) {
    if (auto st = require(params && out, "null argument")) return st;
    return guarded([&] {
        CondensateConfig cfg;
        cfg.g = params->g;
        cfg.gamma = params->gamma;
        cfg.l_c = params->l_c;
        cfg.n_realizations = params->n_realizations;
        cfg.n_z = params->n_z;
        cfg.box_length = params->box_length;
        cfg.dt = params->dt;
        cfg.t_final = params->t_final;
        cfg.seed = params->seed;
        cfg.n_threads = params->n_threads;
        cfg.s_max = params->s_max;
        if (params->snapshots && params->n_snapshots > 0)
            cfg.snapshot_times.assign(params->snapshots,
                                      params->snapshots + params->n_snapshots);
        auto result = std::make_unique<chipnoise_gpe_result>();
        result->res = run_ensemble(cfg);
        *out = result.release();
    });
}

size_t chipnoise_gpe_n_s(const chipnoise_gpe_result* r) {
    return r ? r->res.s_grid.size() : 0;
}
size_t chipnoise_gpe_n_times(const chipnoise_gpe_result* r) {
    return r ? r->res.times.size() : 0;
}
double chipnoise_gpe_s_at(const chipnoise_gpe_result* r, size_t i) {
    return r->res.s_grid[i];
}
double chipnoise_gpe_time_at(const chipnoise_gpe_result* r, size_t t) {
    return r->res.times[t];
}
double chipnoise_gpe_mean_re(const chipnoise_gpe_result* r, size_t t, size_t i) {
    return r->res.mean_re[r->res.idx(t, i)];
}
double chipnoise_gpe_mean_im(const chipnoise_gpe_result* r, size_t t, size_t i) {
    return r->res.mean_im[r->res.idx(t, i)];
}
double chipnoise_gpe_abs_normalized(const chipnoise_gpe_result* r, size_t t,
                                    size_t i) {
    const double re0 = r->res.mean_re[r->res.idx(t, 0)];
    const double im0 = r->res.mean_im[r->res.idx(t, 0)];
    const double re = r->res.mean_re[r->res.idx(t, i)];
    const double im = r->res.mean_im[r->res.idx(t, i)];
    return std::hypot(re, im) / std::hypot(re0, im0);
}
double chipnoise_gpe_stderr(const chipnoise_gpe_result* r, size_t t, size_t i) {
    const double a = r->res.stderr_re[r->res.idx(t, i)];
    const double b = r->res.stderr_im[r->res.idx(t, i)];
    return std::hypot(a, b);
}
double chipnoise_gpe_wall_seconds(const chipnoise_gpe_result* r) {
    return r->res.wall_seconds;
}
void chipnoise_gpe_free(chipnoise_gpe_result* r) { delete r; }

}  // extern "C"
