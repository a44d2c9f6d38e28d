#include "physics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace biphoton {

namespace {
constexpr double kPi = std::numbers::pi;

struct AnalyzerWeights {
    double c1 = 1.0;
    double c2 = 1.0;
    bool coherent = false; // false: no polarizers, incoherent sum
};

AnalyzerWeights analyzer_weights(const AnalyzerConfig& analyzer) {
    AnalyzerWeights w;
    if (analyzer.polarizers) {
        w.coherent = true;
        w.c1 = std::cos(analyzer.polarizers->alpha1) * std::sin(analyzer.polarizers->alpha2);
        w.c2 = std::sin(analyzer.polarizers->alpha1) * std::cos(analyzer.polarizers->alpha2);
    }
    return w;
}
} // namespace

double sinc(double x) {
    if (std::abs(x) < 1e-6) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

double eo_delay(const SpdcSource& source) {
    source.validate();
    return source.inverse_gv_difference * source.crystal_length / 2.0;
}

double spread_width(const DispersiveFibre& fibre, double eo_delay_s) {
    fibre.validate();
    if (!(eo_delay_s > 0.0))
        throw ConfigError("spread_width: e-o delay must be > 0");
    return 2.0 * fibre.k2 * fibre.length / eo_delay_s;
}

double spectral_amplitude(double omega_shift, double eo_delay_s) {
    if (!(eo_delay_s > 0.0))
        throw ConfigError("spectral_amplitude: e-o delay must be > 0");
    return sinc(eo_delay_s * omega_shift);
}

std::complex<double> dispersed_amplitude(double theta, const DispersiveFibre& fibre,
                                         double eo_delay_s) {
    fibre.validate();
    if (!(eo_delay_s > 0.0))
        throw ConfigError("dispersed_amplitude: e-o delay must be > 0");
    const double kz = fibre.k2 * fibre.length;
    if (!(kz > 0.0))
        throw ConfigError("dispersed_amplitude: fibre absent (k''z = 0); use the pre-fibre path");
    // Principal branch of sqrt(4 pi i k''z); the global phase is unobservable.
    const std::complex<double> prefactor =
        1.0 / std::sqrt(std::complex<double>(0.0, 4.0 * kPi * kz));
    const double quad_phase = theta * theta / (4.0 * kz);
    const double envelope = sinc(eo_delay_s * theta / (2.0 * kz));
    return prefactor * std::polar(envelope, quad_phase);
}

CorrelationCurve g2_dispersed(const TimeGrid& grid, const SpdcSource& source,
                              const DispersiveFibre& fibre,
                              const AnalyzerConfig& analyzer) {
    grid.validate();
    analyzer.validate();
    const double tau0 = eo_delay(source);
    const double kz = fibre.k2 * fibre.length;
    if (!(kz > 0.0))
        throw ConfigError("g2_dispersed: fibre absent (k''z = 0); use g2_pre_fibre");
    const double tau_f = spread_width(fibre, tau0);
    const double tau_e = tau0 - analyzer.compensation_delay;
    const double scale = 1.0 / (4.0 * kPi * kz);
    const AnalyzerWeights w = analyzer_weights(analyzer);

    CorrelationCurve curve;
    curve.grid = grid;
    curve.values.resize(static_cast<size_t>(grid.count));
    curve.normalization_note = "rate density, arbitrary units";
    for (std::int64_t i = 0; i < grid.count; ++i) {
        const double theta = grid.at(i);
        const double f1 = sinc((theta - tau_e) / tau_f);
        const double f2 = sinc((theta + tau_e) / tau_f);
        double v;
        if (w.coherent) {
            const double a = w.c1 * f1;
            const double b = w.c2 * f2;
            const double phase_diff = 2.0 * theta * tau_e / (tau0 * tau_f);
            v = a * a + b * b + 2.0 * a * b * std::cos(phase_diff);
        } else {
            v = f1 * f1 + f2 * f2;
        }
        // |a - b|^2 >= 0 analytically; guard fp cancellation.
        curve.values[static_cast<size_t>(i)] = std::max(v, 0.0) * scale;
    }
    return curve;
}

CorrelationCurve g2_approx(const TimeGrid& grid, double spread_width_s,
                           FringeSign sign) {
    grid.validate();
    if (!(spread_width_s > 0.0))
        throw ConfigError("g2_approx: spread width must be > 0");
    CorrelationCurve curve;
    curve.grid = grid;
    curve.values.resize(static_cast<size_t>(grid.count));
    curve.normalization_note = "asymptotic form, arbitrary units";
    for (std::int64_t i = 0; i < grid.count; ++i) {
        const double x = grid.at(i) / spread_width_s;
        double v;
        if (sign == FringeSign::plus) {
            // sin^2 x cos^2 x / x^2 == sinc^2(2x)
            const double s = sinc(2.0 * x);
            v = s * s;
        } else {
            const double s = sinc(x);
            const double sn = std::sin(x);
            v = s * s * sn * sn;
        }
        curve.values[static_cast<size_t>(i)] = v;
    }
    return curve;
}

CorrelationCurve g2_pre_fibre(const TimeGrid& grid, const SpdcSource& source,
                              const AnalyzerConfig& analyzer) {
    grid.validate();
    analyzer.validate();
    const double tau0 = eo_delay(source);
    const double tau_e = tau0 - analyzer.compensation_delay;
    const AnalyzerWeights w = analyzer_weights(analyzer);
    // Unit rectangle on [-tau0, tau0], closed edges.
    auto rect = [tau0](double t) { return std::abs(t) <= tau0 ? 1.0 : 0.0; };

    CorrelationCurve curve;
    curve.grid = grid;
    curve.values.resize(static_cast<size_t>(grid.count));
    curve.normalization_note = "rate density, arbitrary units";
    for (std::int64_t i = 0; i < grid.count; ++i) {
        const double tau = grid.at(i);
        const double f1 = rect(tau - tau_e);
        const double f2 = rect(tau + tau_e);
        double v;
        if (w.coherent) {
            const double a = w.c1 * f1 + w.c2 * f2;
            v = a * a;
        } else {
            v = f1 * f1 + f2 * f2;
        }
        curve.values[static_cast<size_t>(i)] = v;
    }
    return curve;
}

FarFieldReport far_field_check(const SpdcSource& source, const DispersiveFibre& fibre,
                               double threshold) {
    const double tau0 = eo_delay(source);
    FarFieldReport report;
    report.threshold = threshold;
    report.ratio = spread_width(fibre, tau0) / tau0;
    report.valid = report.ratio >= threshold;
    return report;
}

TimeGrid default_dispersed_grid(double spread_width_s) {
    if (!(spread_width_s > 0.0))
        throw ConfigError("default grid: spread width must be > 0");
    return TimeGrid::spanning(5.0 * spread_width_s, 1 << 14);
}

} // namespace biphoton
