#pragma once

#include "types.hpp"

#include <span>

namespace biphoton {

// Discrete convolution with a unit-sum Gaussian kernel (FWHM from the
// jitter model) on the same step; the output grid is extended by the
// kernel half-width on each side so the total integral is preserved
// exactly. Requires grid step <= fwhm/10 when fwhm > 0.
CorrelationCurve convolve_jitter(const CorrelationCurve& curve, const JitterModel& jitter);

// Riemann quadrature over the full grid: step * sum(values), summed
// pairwise in a fixed order.
double integrated_rate(const CorrelationCurve& curve);

// Integral of the piecewise-linear interpolant over [low, high],
// clipped to the grid span.
double window_rate(const CorrelationCurve& curve, double low, double high);

// Full width at half maximum of the connected above-half region around
// the global peak, crossings located by linear interpolation.
double fwhm(const CorrelationCurve& curve);

// (N+ - N-) / (N+ + N-) with N = window_rate over [low, high]. The two
// curves must share a grid.
double visibility(const CorrelationCurve& plus, const CorrelationCurve& minus,
                  double low, double high);

// Integrates the interpolant over each MCA channel (mass outside the
// channel range goes to the under/overflow tallies) and scales so the
// grand total equals total_expected_counts.
CoincidenceHistogram bin_histogram(const CorrelationCurve& curve, const McaConfig& mca,
                                   double total_expected_counts);

// Merges groups of `factor` adjacent channels; channel count must be a
// multiple of factor. Tallies are carried over unchanged.
CoincidenceHistogram rebin(const CoincidenceHistogram& hist, std::int64_t factor);

// Deterministic pairwise summation (fixed association order).
double pairwise_sum(std::span<const double> values);

} // namespace biphoton
