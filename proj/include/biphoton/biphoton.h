/* biphoton: type-II SPDC biphoton dispersion and coincidence-measurement
 * simulator, C interface.
 *
 * All quantities are SI base units (seconds, meters, radians) unless a
 * field name says otherwise.  Functions return BP_OK on success; on
 * failure they return a nonzero status and leave a human-readable
 * message retrievable with bp_last_error() (thread-local).
 */
#ifndef BIPHOTON_H
#define BIPHOTON_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bp_status {
    BP_OK = 0,
    BP_ERROR_CONFIG = 2,  /* invalid parameter / configuration */
    BP_ERROR_NUMERIC = 3, /* degenerate input or failed numeric procedure */
    BP_ERROR_IO = 4       /* file read/write failure */
} bp_status;

const char* bp_version(void);
const char* bp_last_error(void);

/* ---- plain parameter blocks -------------------------------------- */

typedef struct bp_source {
    double crystal_length_m;            /* > 0 */
    double inverse_gv_difference_s_per_m; /* > 0 */
    double pump_half_frequency_rad_per_s; /* informational, may be 0 */
} bp_source;

typedef struct bp_fibre {
    double k1_s_per_m;   /* first dispersion derivative, >= 0 */
    double k2_s2_per_m;  /* second dispersion derivative, may be 0 */
    double length_m;     /* >= 0 */
} bp_fibre;

typedef struct bp_analyzer {
    int has_polarizers;            /* 0: no polarizers (incoherent sum) */
    double alpha1_rad;             /* polarizer 1 angle from horizontal */
    double alpha2_rad;             /* polarizer 2 angle from horizontal */
    double compensation_delay_s;   /* >= 0 */
} bp_analyzer;

typedef struct bp_grid {
    double start_s;
    double step_s;     /* > 0 */
    int64_t count;     /* >= 2 */
} bp_grid;

typedef struct bp_mca {
    double channel_width_s;  /* > 0 */
    int64_t channel_count;   /* >= 1 */
    double origin_s;         /* left edge of channel 0 */
} bp_mca;

typedef struct bp_event_config {
    int64_t pair_count;       /* >= 0, or -1 to use pair_rate * duration */
    double pair_rate_hz;      /* Poisson mode, used when pair_count < 0 */
    double duration_s;
    double accidental_rate_density; /* counts per (s of delay * s), >= 0 */
    uint64_t seed;
    double jitter_fwhm_s;     /* Gaussian jitter added per event, >= 0 */
} bp_event_config;

typedef struct bp_tac {
    double applied_delay_s;
    double range_min_s;
    double range_max_s;  /* range_min <= range_max */
} bp_tac;

typedef struct bp_fit_report {
    double reduced_chi2;
    int64_t degrees_of_freedom;
    double p_value;
} bp_fit_report;

typedef struct bp_dispersion_estimate {
    double k2_hat_s2_per_m;
    double objective_residual;
    int64_t iterations;
    double bracket_low_s2_per_m;
    double bracket_high_s2_per_m;
} bp_dispersion_estimate;

/* ---- scalar physics ----------------------------------------------- */

bp_status bp_eo_delay(const bp_source* src, double* tau0_s);
bp_status bp_spread_width(const bp_fibre* fibre, double tau0_s, double* width_s);
bp_status bp_spectral_amplitude(double omega_shift_rad_per_s, double tau0_s,
                                double* value);
bp_status bp_dispersed_amplitude(double theta_s, const bp_fibre* fibre,
                                 double tau0_s, double* re, double* im);
/* ratio = spread_width / eo_delay; valid when ratio >= threshold
 * (pass threshold <= 0 for the default of 50). */
bp_status bp_far_field_check(const bp_source* src, const bp_fibre* fibre,
                             double threshold, double* ratio, int* valid);

/* ---- correlation curves (opaque) ----------------------------------- */

typedef struct bp_curve bp_curve;

void bp_curve_free(bp_curve* curve);
int64_t bp_curve_count(const bp_curve* curve);
double bp_curve_theta(const bp_curve* curve, int64_t index);
double bp_curve_value(const bp_curve* curve, int64_t index);
bp_status bp_curve_write_csv(const bp_curve* curve, const char* path);

bp_status bp_g2_dispersed(const bp_grid* grid, const bp_source* src,
                          const bp_fibre* fibre, const bp_analyzer* analyzer,
                          bp_curve** out);
/* plus_sign nonzero selects the (45,45) asymptotic form, zero (45,-45). */
bp_status bp_g2_approx(const bp_grid* grid, double spread_width_s,
                       int plus_sign, bp_curve** out);
bp_status bp_g2_pre_fibre(const bp_grid* grid, const bp_source* src,
                          const bp_analyzer* analyzer, bp_curve** out);

/* ---- detection chain ------------------------------------------------ */

bp_status bp_convolve_jitter(const bp_curve* curve, double fwhm_s,
                             bp_curve** out);
bp_status bp_fwhm(const bp_curve* curve, double* width_s);
bp_status bp_integrated_rate(const bp_curve* curve, double* rate);
bp_status bp_window_rate(const bp_curve* curve, double window_low_s,
                         double window_high_s, double* rate);
bp_status bp_visibility(const bp_curve* plus, const bp_curve* minus,
                        double window_low_s, double window_high_s,
                        double* visibility);

typedef struct bp_histogram bp_histogram;

void bp_histogram_free(bp_histogram* hist);
int64_t bp_histogram_channel_count(const bp_histogram* hist);
double bp_histogram_count(const bp_histogram* hist, int64_t channel);
double bp_histogram_underflow(const bp_histogram* hist);
double bp_histogram_overflow(const bp_histogram* hist);
double bp_histogram_tac_dropped(const bp_histogram* hist);
bp_status bp_histogram_write(const bp_histogram* hist, const char* path);
bp_status bp_histogram_read(const char* path, bp_histogram** out);

bp_status bp_bin_histogram(const bp_curve* curve, const bp_mca* mca,
                           double total_expected_counts, bp_histogram** out);

/* ---- event Monte Carlo ---------------------------------------------- */

/* Draws start-stop delays from the curve (inverse CDF on the grid) and
 * adds per-event Gaussian jitter.  The returned buffer holds *count
 * doubles and must be released with bp_buffer_free. */
bp_status bp_sample_coincidences(const bp_curve* curve,
                                 const bp_event_config* config,
                                 double** delays, int64_t* count);
void bp_buffer_free(double* buffer);

bp_status bp_accumulate_tac(const double* delays, int64_t count,
                            const bp_tac* tac, const bp_mca* mca,
                            const bp_event_config* config,
                            bp_histogram** out);
bp_status bp_goodness_of_fit(const bp_histogram* observed,
                             const bp_histogram* expected,
                             bp_fit_report* report);

/* ---- scenarios ------------------------------------------------------ */

/* Runs a named scenario (fig2a, fig2b, fig3_sim, compensation_sweep,
 * jitter_sweep, dispersion_estimate, custom).  scenario may be NULL when
 * the config file names one.  config_path may be NULL (built-in
 * defaults).  emit is a comma list from {curves,hist,summary}; NULL
 * means all.  seed < 0 keeps the configured seed.  On success, when
 * summary_text is non-NULL it receives a malloc'd copy of the summary
 * (release with bp_string_free). */
bp_status bp_scenario_run(const char* scenario, const char* config_path,
                          const char* out_dir, const char* emit,
                          int64_t seed, char** summary_text);
void bp_string_free(char* text);

bp_status bp_estimate_k2(const char* histogram_path, const char* config_path,
                         bp_dispersion_estimate* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BIPHOTON_H */
