#pragma once

#include "types.hpp"

#include <complex>

namespace biphoton {

// e-o group delay accumulated in the crystal: D * L / 2.
double eo_delay(const SpdcSource& source);

// Width of the correlation function after the fibre: 2 k'' z / tau0.
double spread_width(const DispersiveFibre& fibre, double eo_delay_s);

// Type-II spectral amplitude sinc(tau0 * Omega); 1 at Omega = 0.
double spectral_amplitude(double omega_shift, double eo_delay_s);

// Biphoton amplitude after the fibre in shifted time theta = tau - k'z:
// (4 pi i k''z)^(-1/2) * exp(i theta^2 / (4 k''z)) * sinc(tau0 theta / (2 k''z)).
// Requires k''z > 0.
std::complex<double> dispersed_amplitude(double theta, const DispersiveFibre& fibre,
                                         double eo_delay_s);

// Exact post-fibre correlation function for arbitrary polarizer angles and
// compensation delay. With polarizers at (a1, a2) the two shifted amplitudes
// enter with weights cos(a1)sin(a2) and sin(a1)cos(a2); without polarizers
// the incoherent sum of both is returned. The interference term is evaluated
// through the analytic phase difference -2 theta tau_e / (tau0 tau_f), never
// as a difference of the large quadratic phases.
CorrelationCurve g2_dispersed(const TimeGrid& grid, const SpdcSource& source,
                              const DispersiveFibre& fibre,
                              const AnalyzerConfig& analyzer);

enum class FringeSign { plus, minus };

// tau_f >> tau0 asymptotic forms: sin^2 x cos^2 x / x^2 (plus) and
// sin^4 x / x^2 (minus) with x = theta / tau_f.
CorrelationCurve g2_approx(const TimeGrid& grid, double spread_width_s,
                           FringeSign sign);

// Pre-fibre correlation function: rectangular amplitudes of width 2 tau0
// centered at +-tau_e, combined with the same analyzer weights as
// g2_dispersed (incoherent sum without polarizers).
CorrelationCurve g2_pre_fibre(const TimeGrid& grid, const SpdcSource& source,
                              const AnalyzerConfig& analyzer);

struct FarFieldReport {
    double ratio = 0.0; // tau_f / tau0
    double threshold = 0.0;
    bool valid = false; // ratio >= threshold (inclusive)
};

// Advisory check that the dispersive far-field condition tau_f >> tau0 holds.
FarFieldReport far_field_check(const SpdcSource& source, const DispersiveFibre& fibre,
                               double threshold = 50.0);

// |theta| <= 5 tau_f with 2^14 points.
TimeGrid default_dispersed_grid(double spread_width_s);

// sin(x)/x with the removable singularity handled by series for |x| < 1e-6.
double sinc(double x);

} // namespace biphoton
