#pragma once

#include "types.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace biphoton {

struct EventSimConfig {
    std::optional<std::int64_t> pair_count; // exact event count when set
    double pair_rate = 0.0;                 // Poisson mode otherwise
    double duration = 1.0;
    double accidental_rate_density = 0.0;   // counts per (s of delay * s)
    std::uint64_t rng_seed = 0;
    JitterModel jitter;

    void validate() const {
        jitter.validate();
        if (pair_count && *pair_count < 0)
            throw ConfigError("events: pair count must be >= 0");
        if (!pair_count && !(pair_rate >= 0.0))
            throw ConfigError("events: pair rate must be >= 0");
        if (!(duration >= 0.0)) throw ConfigError("events: duration must be >= 0");
        if (accidental_rate_density < 0.0)
            throw ConfigError("events: accidental rate density must be >= 0");
    }
};

struct TacModel {
    double applied_delay = 0.0;
    double range_min = -std::numeric_limits<double>::infinity();
    double range_max = std::numeric_limits<double>::infinity();

    void validate() const {
        if (!(range_min <= range_max)) throw ConfigError("tac: empty acceptance range");
    }
};

// Events are generated in fixed chunks of 2^16, each chunk seeded from
// (master seed, chunk index), so the stream is independent of any
// parallel partitioning.
inline constexpr std::int64_t kEventChunk = 1 << 16;

// Draws start-stop delays from the normalized curve by piecewise-linear
// inverse-CDF interpolation on the grid, then adds one Gaussian jitter
// deviate per event. Deterministic for a fixed seed.
std::vector<double> sample_coincidences(const CorrelationCurve& curve,
                                        const EventSimConfig& config);

// Applies the TAC delay/range, bins survivors into MCA channels, and adds
// Poisson accidentals per channel (mean = rate density * width * duration).
CoincidenceHistogram accumulate_tac(std::span<const double> delays, const TacModel& tac,
                                    const McaConfig& mca, const EventSimConfig& config);

struct FitReport {
    double reduced_chi2 = 0.0;
    std::int64_t degrees_of_freedom = 0;
    double p_value = 0.0; // upper-tail indicator (Wilson-Hilferty)
};

// Pearson reduced chi-square; adjacent channels are pooled until the
// expected content reaches 5.
FitReport goodness_of_fit(const CoincidenceHistogram& observed,
                          const CoincidenceHistogram& expected);

} // namespace biphoton
