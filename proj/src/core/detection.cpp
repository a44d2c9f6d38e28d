#include "detection.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace biphoton {

namespace {

constexpr double kFwhmToSigma = 0.42466090014400953; // 1 / (2 sqrt(2 ln 2))

// Cumulative integral of the piecewise-linear interpolant, evaluated at
// an arbitrary time; exact on each linear segment.
class CurveIntegral {
public:
    explicit CurveIntegral(const CorrelationCurve& curve) : curve_(curve) {
        const auto n = static_cast<size_t>(curve.grid.count);
        node_cum_.resize(n);
        node_cum_[0] = 0.0;
        for (size_t i = 1; i < n; ++i)
            node_cum_[i] = node_cum_[i - 1] +
                           0.5 * (curve.values[i - 1] + curve.values[i]) * curve.grid.step;
    }

    double total() const { return node_cum_.back(); }

    double at(double t) const {
        const TimeGrid& g = curve_.grid;
        if (t <= g.start) return 0.0;
        if (t >= g.end()) return total();
        const double pos = (t - g.start) / g.step;
        auto i = static_cast<std::int64_t>(pos);
        i = std::clamp<std::int64_t>(i, 0, g.count - 2);
        const double dt = t - g.at(i);
        const double v0 = curve_.values[static_cast<size_t>(i)];
        const double v1 = curve_.values[static_cast<size_t>(i) + 1];
        const double slope = (v1 - v0) / g.step;
        return node_cum_[static_cast<size_t>(i)] + v0 * dt + 0.5 * slope * dt * dt;
    }

    double between(double a, double b) const {
        if (b <= a) return 0.0;
        return at(b) - at(a);
    }

private:
    const CorrelationCurve& curve_;
    std::vector<double> node_cum_;
};

} // namespace

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const size_t half = values.size() / 2;
    return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

CorrelationCurve convolve_jitter(const CorrelationCurve& curve, const JitterModel& jitter) {
    curve.validate();
    jitter.validate();
    if (jitter.fwhm == 0.0) return curve;
    const double step = curve.grid.step;
    if (step > jitter.fwhm / 10.0)
        throw ConfigError("convolve_jitter: grid step exceeds fwhm/10; "
                          "the kernel would be unresolved");
    const double sigma = jitter.fwhm * kFwhmToSigma;
    const auto half = static_cast<std::int64_t>(std::ceil(6.0 * sigma / step));
    std::vector<double> kernel(static_cast<size_t>(2 * half + 1));
    double ksum = 0.0;
    for (std::int64_t j = -half; j <= half; ++j) {
        const double u = static_cast<double>(j) * step / sigma;
        kernel[static_cast<size_t>(j + half)] = std::exp(-0.5 * u * u);
        ksum += kernel[static_cast<size_t>(j + half)];
    }
    for (double& k : kernel) k /= ksum;

    const std::int64_t n = curve.grid.count;
    CorrelationCurve out;
    out.grid.step = step;
    out.grid.start = curve.grid.start - static_cast<double>(half) * step;
    out.grid.count = n + 2 * half;
    out.normalization_note = curve.normalization_note;
    out.values.assign(static_cast<size_t>(out.grid.count), 0.0);
    const std::int64_t klen = 2 * half + 1;
    for (std::int64_t m = 0; m < n; ++m) {
        const double v = curve.values[static_cast<size_t>(m)];
        if (v == 0.0) continue;
        double* dst = out.values.data() + m;
        for (std::int64_t j = 0; j < klen; ++j) dst[j] += v * kernel[static_cast<size_t>(j)];
    }
    return out;
}

double integrated_rate(const CorrelationCurve& curve) {
    curve.validate();
    return curve.grid.step * pairwise_sum(curve.values);
}

double window_rate(const CorrelationCurve& curve, double low, double high) {
    curve.validate();
    return CurveIntegral(curve).between(low, high);
}

double fwhm(const CorrelationCurve& curve) {
    curve.validate();
    const auto& v = curve.values;
    const auto peak_it = std::max_element(v.begin(), v.end());
    const double vmax = *peak_it;
    if (!(vmax > 0.0))
        throw NumericError("fwhm: curve has no positive maximum");
    if (vmax == *std::min_element(v.begin(), v.end()))
        throw NumericError("fwhm: curve is flat, width undefined");
    const double half = vmax / 2.0;
    const auto peak = static_cast<std::int64_t>(peak_it - v.begin());
    const TimeGrid& g = curve.grid;

    std::int64_t i = peak;
    while (i > 0 && v[static_cast<size_t>(i)] >= half) --i;
    if (v[static_cast<size_t>(i)] >= half)
        throw NumericError("fwhm: left half-maximum crossing outside grid");
    const double left = g.at(i) + (half - v[static_cast<size_t>(i)]) /
                                      (v[static_cast<size_t>(i) + 1] - v[static_cast<size_t>(i)]) * g.step;

    i = peak;
    while (i < g.count - 1 && v[static_cast<size_t>(i)] >= half) ++i;
    if (v[static_cast<size_t>(i)] >= half)
        throw NumericError("fwhm: right half-maximum crossing outside grid");
    const double right = g.at(i - 1) + (half - v[static_cast<size_t>(i) - 1]) /
                                           (v[static_cast<size_t>(i)] - v[static_cast<size_t>(i) - 1]) * g.step;
    return right - left;
}

double visibility(const CorrelationCurve& plus, const CorrelationCurve& minus,
                  double low, double high) {
    plus.validate();
    minus.validate();
    if (plus.grid.start != minus.grid.start || plus.grid.step != minus.grid.step ||
        plus.grid.count != minus.grid.count)
        throw ConfigError("visibility: curves must share a grid");
    const double np = window_rate(plus, low, high);
    const double nm = window_rate(minus, low, high);
    if (np + nm == 0.0)
        throw NumericError("visibility: both window rates are zero");
    return (np - nm) / (np + nm);
}

CoincidenceHistogram bin_histogram(const CorrelationCurve& curve, const McaConfig& mca,
                                   double total_expected_counts) {
    curve.validate();
    mca.validate();
    if (total_expected_counts < 0.0)
        throw ConfigError("bin_histogram: total expected counts must be >= 0");
    const double grid_lo = curve.grid.start;
    const double grid_hi = curve.grid.end();
    if (mca.origin >= grid_hi || mca.span_end() <= grid_lo)
        throw ConfigError("bin_histogram: curve grid does not overlap the MCA range");

    const CurveIntegral integral(curve);
    CoincidenceHistogram hist;
    hist.config = mca;
    hist.counts.assign(static_cast<size_t>(mca.channel_count), 0.0);
    hist.underflow = integral.between(grid_lo, mca.origin);
    hist.overflow = integral.between(mca.span_end(), grid_hi);
    for (std::int64_t j = 0; j < mca.channel_count; ++j)
        hist.counts[static_cast<size_t>(j)] =
            integral.between(mca.left_edge(j), mca.left_edge(j + 1));

    const double grand = hist.recorded_total() + hist.underflow + hist.overflow;
    if (grand <= 0.0) {
        if (total_expected_counts > 0.0)
            throw NumericError("bin_histogram: curve mass is zero, cannot scale");
        return hist;
    }
    const double scale = total_expected_counts / grand;
    for (double& c : hist.counts) c *= scale;
    hist.underflow *= scale;
    hist.overflow *= scale;
    return hist;
}

CoincidenceHistogram rebin(const CoincidenceHistogram& hist, std::int64_t factor) {
    if (factor < 1 || hist.config.channel_count % factor != 0)
        throw ConfigError("rebin: factor must divide the channel count");
    CoincidenceHistogram out;
    out.config.channel_width = hist.config.channel_width * static_cast<double>(factor);
    out.config.channel_count = hist.config.channel_count / factor;
    out.config.origin = hist.config.origin;
    out.underflow = hist.underflow;
    out.overflow = hist.overflow;
    out.tac_dropped = hist.tac_dropped;
    out.accidental_total = hist.accidental_total;
    out.counts.assign(static_cast<size_t>(out.config.channel_count), 0.0);
    for (std::int64_t j = 0; j < hist.config.channel_count; ++j)
        out.counts[static_cast<size_t>(j / factor)] += hist.counts[static_cast<size_t>(j)];
    return out;
}

} // namespace biphoton
