#ifndef CHIPNOISE_H
#define CHIPNOISE_H

/* C API for the chipnoise library.
 *
 * Every function returns a chipnoise_status; results come back through
 * out-parameters. On any non-OK status, chipnoise_last_error() returns a
 * thread-local message describing what went wrong. Handles are opaque
 * and freed with their matching _free function. All quantities are SI
 * unless a parameter name says otherwise; the decoherence and condensate
 * runs work in scaled (harmonic-oscillator) units as documented.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum chipnoise_status {
    CHIPNOISE_OK = 0,
    CHIPNOISE_ERROR_INVALID_ARGUMENT = 1,
    CHIPNOISE_ERROR_DOMAIN = 2,
    CHIPNOISE_ERROR_CONFIG = 3,
    CHIPNOISE_ERROR_NUMERIC = 4,
    CHIPNOISE_ERROR_IO = 5
} chipnoise_status;

const char* chipnoise_version(void);

/* Thread-local message for the most recent failure on this thread. */
const char* chipnoise_last_error(void);

/* Warnings raised by the most recent call on this thread; returns NULL
 * when none remain. Each call pops one message. */
const char* chipnoise_next_warning(void);

/* ---- physical constants ------------------------------------------- */

typedef struct chipnoise_constants {
    double mu0;       /* T m / A */
    double kB;        /* J / K */
    double hbar;      /* J s */
    double e_charge;  /* C */
    double muB;       /* J / T */
    double amu;       /* kg */
    double m_e;       /* kg */
    double g_grav;    /* m / s^2 */
    double rho_copper;/* Ohm m */
} chipnoise_constants;

void chipnoise_get_constants(chipnoise_constants* out);

/* ---- config files -------------------------------------------------- */

typedef struct chipnoise_config chipnoise_config;

chipnoise_status chipnoise_config_parse(const char* path, chipnoise_config** out);
chipnoise_status chipnoise_config_parse_string(const char* text,
                                               chipnoise_config** out);
chipnoise_status chipnoise_config_create(chipnoise_config** out);
/* assignment is "key=value" or "key = value unit" */
chipnoise_status chipnoise_config_set(chipnoise_config* cfg, const char* assignment);
chipnoise_status chipnoise_config_validate(const chipnoise_config* cfg);
chipnoise_status chipnoise_config_get(const chipnoise_config* cfg, const char* key,
                                      double* out_si);
int chipnoise_config_has(const chipnoise_config* cfg, const char* key);
/* iterate the key/value echo (SI formatted); returns entry count */
size_t chipnoise_config_count(const chipnoise_config* cfg);
chipnoise_status chipnoise_config_entry(const chipnoise_config* cfg, size_t index,
                                        const char** key, const char** value);
void chipnoise_config_free(chipnoise_config* cfg);

/* ---- trap geometry -------------------------------------------------- */

chipnoise_status chipnoise_guide_height(double current_A, double bias_field_T,
                                        double* out_m);
chipnoise_status chipnoise_skin_depth(double resistivity_ohm_m, double omega_rad_s,
                                      double* out_m);
chipnoise_status chipnoise_larmor_frequency(double mu_parallel_J_T, double field_T,
                                            double* out_rad_s);
chipnoise_status chipnoise_ground_state_size(double mass_kg, double omega_rad_s,
                                             double* out_m);
chipnoise_status chipnoise_sag_suppression_ratio(double mass_kg, double gravity,
                                                 double mu_parallel_J_T,
                                                 double gradient_T_m,
                                                 double* out);

/* ---- noise spectra --------------------------------------------------- */

typedef enum chipnoise_axes {
    CHIPNOISE_AXES_CARTESIAN_SURFACE = 0, /* x, y=surface normal, z=guide */
    CHIPNOISE_AXES_CYLINDRICAL_WIRE = 1   /* azimuthal, radial, longitudinal */
} chipnoise_axes;

typedef struct chipnoise_noise_tensor {
    double components[9]; /* row-major S_ab, T^2/Hz */
    int axes;             /* chipnoise_axes */
    double position_m;
    double omega_rad_s;
} chipnoise_noise_tensor;

chipnoise_status chipnoise_halfspace_spectrum(double resistivity_ohm_m,
                                              double temperature_K, double h_m,
                                              double omega_rad_s,
                                              int bose_einstein,
                                              chipnoise_noise_tensor* out);
chipnoise_status chipnoise_thin_wire_spectrum(double resistivity_ohm_m,
                                              double temperature_K,
                                              double radius_m, double h_m,
                                              double omega_rad_s,
                                              chipnoise_noise_tensor* out);
chipnoise_status chipnoise_shot_noise_level(double current_A, double* out_A2_Hz);
chipnoise_status chipnoise_current_noise_field_spectrum(double current_A,
                                                        double h_m,
                                                        double noise_ratio,
                                                        double* out_T2_Hz);

typedef enum chipnoise_dist_kind {
    CHIPNOISE_DIST_MAXWELL = 0,
    CHIPNOISE_DIST_FERMI_DIRAC = 1,
    CHIPNOISE_DIST_DELTA = 2
} chipnoise_dist_kind;

typedef struct chipnoise_electron_dist {
    int kind;                       /* chipnoise_dist_kind */
    double characteristic_velocity; /* m/s: gaussian width, v_F, or spike */
    double drift_velocity;          /* m/s */
    double smearing;                /* m/s, Fermi edge width; 0 = sharp */
} chipnoise_electron_dist;

chipnoise_status chipnoise_shot_noise_spectrum(double current_A, double r_m,
                                               double rp_m, double dz_m,
                                               double omega_rad_s,
                                               const chipnoise_electron_dist* dist,
                                               double* out_T2_Hz);
chipnoise_status chipnoise_nearfield_correlation(double s_m, double h_m,
                                                 double* out);
chipnoise_status chipnoise_correlation_length_nearfield(double h_m, double* out_m);

/* ---- rates ----------------------------------------------------------- */

chipnoise_status chipnoise_spin_flip_rate(const chipnoise_noise_tensor* tensor,
                                          double F, double m_initial,
                                          double m_final, double g_factor,
                                          double mu_scale_J_T, double* out_rate);
chipnoise_status chipnoise_nearfield_flip_estimate(double mu_ratio,
                                                   double temperature_K,
                                                   double resistivity_ohm_m,
                                                   double h_m,
                                                   double omega_larmor_rad_s,
                                                   double* out_rate);
chipnoise_status chipnoise_current_flip_estimate(double current_A, double h_m,
                                                 double noise_ratio,
                                                 double* out_rate);
chipnoise_status chipnoise_dephasing_rate(double delta_mu_J_T,
                                          double s_parallel_T2_Hz,
                                          double* out_rate);
chipnoise_status chipnoise_heating_rate_01(double s_parallel_T2_Hz,
                                           double ground_size_m, double l_c_m,
                                           double mu_parallel_J_T,
                                           double* out_rate);
chipnoise_status chipnoise_nearfield_heating_estimate(double mu_ratio,
                                                      double temperature_K,
                                                      double mass_kg,
                                                      double omega_rad_s,
                                                      double resistivity_ohm_m,
                                                      double h_m,
                                                      double* out_rate);
chipnoise_status chipnoise_displacement_heating(double mass_kg,
                                                double omega_rad_s,
                                                double s_height_m2_Hz,
                                                double* out_rate);
chipnoise_status chipnoise_displacement_heating_estimate(double mass_kg,
                                                         double omega_rad_s,
                                                         double current_A,
                                                         double bias_field_T,
                                                         double noise_ratio,
                                                         double* out_rate);
chipnoise_status chipnoise_parametric_heating(double s_omega, double* out_rate);
chipnoise_status chipnoise_parametric_heating_estimate(double omega_rad_s,
                                                       double current_A,
                                                       double noise_ratio,
                                                       double* out_rate);
chipnoise_status chipnoise_temperature_rise(double omega_rad_s, double gamma01,
                                            double* out_K_s);

typedef struct chipnoise_rate_report {
    double flip_rate;
    double dephasing_rate;
    double heating_01;
    double heating_02;
    double temperature_rise;
    double flip_estimate;          /* eq9 */
    double current_flip_estimate;  /* eq12 */
    double heating_estimate;       /* eq21 */
    double displacement_estimate;  /* eq23 */
    double parametric_estimate;    /* eq25 */
    double loss_timescale;
    double omega_larmor;
    double height;
    double correlation_length;
    char dominant_channel[24];
} chipnoise_rate_report;

chipnoise_status chipnoise_compute_rates(const chipnoise_config* cfg,
                                         chipnoise_rate_report* out);

/* ---- spatial decoherence (scaled units: hbar = M = 1) ---------------- */

typedef struct chipnoise_decohere_params {
    double gamma;       /* total scattering rate */
    double l_c;         /* correlation length */
    int correlation;    /* 0 lorentzian, 1 nearfield */
    int n_z;            /* power of two */
    int n_p;            /* power of two */
    double box_length;  /* >= ~100 l_c for clean tails */
    double dt;          /* 0: auto from the stability bounds */
    double sigma_z;     /* initial wavepacket width; 0: auto */
    double s_max;       /* coherence window; 0: 8 l_c */
} chipnoise_decohere_params;

void chipnoise_decohere_params_init(chipnoise_decohere_params* p);

typedef struct chipnoise_decohere_result chipnoise_decohere_result;

chipnoise_status chipnoise_decohere_run(const chipnoise_decohere_params* params,
                                        const double* times, size_t n_times,
                                        chipnoise_decohere_result** out);
size_t chipnoise_decohere_n_s(const chipnoise_decohere_result* r);
size_t chipnoise_decohere_n_times(const chipnoise_decohere_result* r);
double chipnoise_decohere_s_at(const chipnoise_decohere_result* r, size_t i);
double chipnoise_decohere_time_at(const chipnoise_decohere_result* r, size_t t);
/* |rho(s,t)| / |rho(0,t)| */
double chipnoise_decohere_coherence(const chipnoise_decohere_result* r, size_t t,
                                    size_t i);
/* exact-solution prediction for the same quantity: the initial profile
 * |rho(s,0)|/|rho(0,0)| times exp(-gamma t [1 - C(s)]) */
double chipnoise_decohere_analytic(const chipnoise_decohere_result* r, size_t t,
                                   size_t i);
void chipnoise_decohere_free(chipnoise_decohere_result* r);

/* ---- stochastic condensate (scaled units) ----------------------------- */

typedef struct chipnoise_gpe_params {
    double g;
    double gamma;
    double l_c;
    int n_realizations;
    int n_z;
    double box_length;
    double dt;
    double t_final;
    const double* snapshots;
    size_t n_snapshots;
    uint64_t seed;
    int n_threads;  /* 0: CHIPNOISE_THREADS env or hardware */
    double s_max;   /* 0: box_length / 4 */
} chipnoise_gpe_params;

void chipnoise_gpe_params_init(chipnoise_gpe_params* p);

typedef struct chipnoise_gpe_result chipnoise_gpe_result;

chipnoise_status chipnoise_gpe_run(const chipnoise_gpe_params* params,
                                   chipnoise_gpe_result** out);
size_t chipnoise_gpe_n_s(const chipnoise_gpe_result* r);
size_t chipnoise_gpe_n_times(const chipnoise_gpe_result* r);
double chipnoise_gpe_s_at(const chipnoise_gpe_result* r, size_t i);
double chipnoise_gpe_time_at(const chipnoise_gpe_result* r, size_t t);
double chipnoise_gpe_mean_re(const chipnoise_gpe_result* r, size_t t, size_t i);
double chipnoise_gpe_mean_im(const chipnoise_gpe_result* r, size_t t, size_t i);
/* |mean rho(s,t)| / |mean rho(0,t)| */
double chipnoise_gpe_abs_normalized(const chipnoise_gpe_result* r, size_t t,
                                    size_t i);
/* combined standard error sqrt(se_re^2 + se_im^2) */
double chipnoise_gpe_stderr(const chipnoise_gpe_result* r, size_t t, size_t i);
double chipnoise_gpe_wall_seconds(const chipnoise_gpe_result* r);
void chipnoise_gpe_free(chipnoise_gpe_result* r);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CHIPNOISE_H */
