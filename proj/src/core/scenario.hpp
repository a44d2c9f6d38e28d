#pragma once

#include "config.hpp"
#include "io.hpp"
#include "types.hpp"

#include <optional>

namespace biphoton {

struct RunOptions {
    std::optional<ScenarioKind> scenario;
    std::optional<std::string> output_directory;
    std::optional<EmitFlags> emit;
    std::optional<std::uint64_t> seed;
};

// Runs the selected named scenario, writes the requested files into the
// output directory, and returns the summary record.
Summary run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

struct DispersionEstimate {
    double k2_hat = 0.0;              // s^2/m
    double objective_residual = 0.0;
    std::int64_t iterations = 0;
    double bracket_low = 0.0;
    double bracket_high = 0.0;
};

// Recovers k'' from a measured histogram by bracketed golden-section
// search in log(k'') against the forward model (no-polarizer curve ->
// jitter convolution -> MCA binning, integral-normalized). The known
// source, fibre length, jitter and search bracket come from `known`.
DispersionEstimate estimate_dispersion(const CoincidenceHistogram& measured,
                                       const ScenarioConfig& known);

// View of a histogram as a curve sampled at channel centers.
CorrelationCurve histogram_as_curve(const CoincidenceHistogram& hist);

} // namespace biphoton
