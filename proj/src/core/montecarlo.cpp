#include "montecarlo.hpp"

#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace biphoton {

namespace {
constexpr double kFwhmToSigma = 0.42466090014400953;
constexpr std::uint64_t kCountStream = 0x636f756e74ULL;      // event-count draw
constexpr std::uint64_t kAccidentalStream = 0x616363ULL;     // background draw
constexpr std::uint64_t kChunkStreamBase = 0x6368756e6bULL;  // delay chunks

std::uint64_t chunk_stream(std::int64_t chunk) {
    return kChunkStreamBase ^ (static_cast<std::uint64_t>(chunk) << 20);
}
} // namespace

std::vector<double> sample_coincidences(const CorrelationCurve& curve,
                                        const EventSimConfig& config) {
    curve.validate();
    config.validate();
    const TimeGrid& g = curve.grid;

    // Trapezoid CDF at the grid nodes.
    std::vector<double> cdf(static_cast<size_t>(g.count));
    cdf[0] = 0.0;
    for (std::int64_t i = 1; i < g.count; ++i)
        cdf[static_cast<size_t>(i)] =
            cdf[static_cast<size_t>(i - 1)] +
            0.5 * (curve.values[static_cast<size_t>(i - 1)] + curve.values[static_cast<size_t>(i)]) *
                g.step;
    const double total = cdf.back();
    if (!(total > 0.0))
        throw NumericError("sample_coincidences: curve integral is zero, cannot normalize");

    std::int64_t n;
    if (config.pair_count) {
        n = *config.pair_count;
    } else {
        std::mt19937_64 count_gen(derive_seed(config.rng_seed, kCountStream));
        n = static_cast<std::int64_t>(poisson(count_gen, config.pair_rate * config.duration));
    }

    const double sigma = config.jitter.fwhm * kFwhmToSigma;
    std::vector<double> delays;
    delays.reserve(static_cast<size_t>(n));
    std::mt19937_64 gen;
    for (std::int64_t e = 0; e < n; ++e) {
        if (e % kEventChunk == 0)
            gen.seed(derive_seed(config.rng_seed, chunk_stream(e / kEventChunk)));
        const double target = uniform01(gen) * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
        auto seg = std::clamp<std::int64_t>(static_cast<std::int64_t>(it - cdf.begin()) - 1,
                                            0, g.count - 2);
        const double mass = cdf[static_cast<size_t>(seg) + 1] - cdf[static_cast<size_t>(seg)];
        const double frac =
            mass > 0.0 ? std::clamp((target - cdf[static_cast<size_t>(seg)]) / mass, 0.0, 1.0)
                       : 0.0;
        double t = g.at(seg) + frac * g.step;
        if (sigma > 0.0) t += sigma * gaussian(gen);
        delays.push_back(t);
    }
    return delays;
}

CoincidenceHistogram accumulate_tac(std::span<const double> delays, const TacModel& tac,
                                    const McaConfig& mca, const EventSimConfig& config) {
    tac.validate();
    mca.validate();
    config.validate();

    CoincidenceHistogram hist;
    hist.config = mca;
    hist.counts.assign(static_cast<size_t>(mca.channel_count), 0.0);
    for (double d : delays) {
        const double t = d + tac.applied_delay;
        if (t < tac.range_min || t > tac.range_max) {
            hist.tac_dropped += 1.0;
            continue;
        }
        const double pos = (t - mca.origin) / mca.channel_width;
        if (pos < 0.0) {
            hist.underflow += 1.0;
        } else {
            const auto ch = static_cast<std::int64_t>(pos);
            if (ch >= mca.channel_count)
                hist.overflow += 1.0;
            else
                hist.counts[static_cast<size_t>(ch)] += 1.0;
        }
    }

    const double mean = config.accidental_rate_density * mca.channel_width * config.duration;
    if (mean > 0.0) {
        std::mt19937_64 gen(derive_seed(config.rng_seed, kAccidentalStream));
        for (std::int64_t ch = 0; ch < mca.channel_count; ++ch) {
            const auto k = static_cast<double>(poisson(gen, mean));
            hist.counts[static_cast<size_t>(ch)] += k;
            hist.accidental_total += k;
        }
    }
    return hist;
}

FitReport goodness_of_fit(const CoincidenceHistogram& observed,
                          const CoincidenceHistogram& expected) {
    if (!(observed.config == expected.config))
        throw ConfigError("goodness_of_fit: histograms have different MCA configurations");

    // Pool adjacent channels until the expected content reaches 5; a
    // trailing remainder is folded into the last closed group.
    double chi2 = 0.0;
    std::int64_t groups = 0;
    double pooled_obs = 0.0, pooled_exp = 0.0;
    double last_obs = 0.0, last_exp = 0.0;
    for (size_t i = 0; i < expected.counts.size(); ++i) {
        pooled_obs += observed.counts[i];
        pooled_exp += expected.counts[i];
        if (pooled_exp >= 5.0) {
            const double d = pooled_obs - pooled_exp;
            chi2 += d * d / pooled_exp;
            last_obs = pooled_obs;
            last_exp = pooled_exp;
            ++groups;
            pooled_obs = pooled_exp = 0.0;
        }
    }
    if ((pooled_obs > 0.0 || pooled_exp > 0.0) && groups > 0) {
        const double prev = (last_obs - last_exp) * (last_obs - last_exp) / last_exp;
        const double obs = last_obs + pooled_obs;
        const double exp = last_exp + pooled_exp;
        chi2 += (obs - exp) * (obs - exp) / exp - prev;
    }
    if (groups < 2)
        throw NumericError("goodness_of_fit: too few channels with expected counts >= 5");

    FitReport report;
    report.degrees_of_freedom = groups - 1;
    report.reduced_chi2 = chi2 / static_cast<double>(report.degrees_of_freedom);
    // Wilson-Hilferty cube-root normal approximation to the chi2 tail.
    const double k = static_cast<double>(report.degrees_of_freedom);
    const double z = (std::cbrt(report.reduced_chi2) - (1.0 - 2.0 / (9.0 * k))) /
                     std::sqrt(2.0 / (9.0 * k));
    report.p_value = 0.5 * std::erfc(z / std::sqrt(2.0));
    return report;
}

} // namespace biphoton
