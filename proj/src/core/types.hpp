#pragma once

#include "errors.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace biphoton {

// All fields are SI base units (seconds, meters, radians).

struct SpdcSource {
    double crystal_length = 0.0;        // L, > 0
    double inverse_gv_difference = 0.0; // D = 1/u_V - 1/u_H, > 0
    double pump_half_frequency = 0.0;   // informational only

    void validate() const {
        if (!(crystal_length > 0.0))
            throw ConfigError("source: crystal length must be > 0");
        if (!(inverse_gv_difference > 0.0))
            throw ConfigError("source: inverse group-velocity difference must be > 0");
    }
};

struct DispersiveFibre {
    double k1 = 0.0;     // first dispersion derivative, s/m
    double k2 = 0.0;     // second dispersion derivative, s^2/m
    double length = 0.0; // z, m

    void validate() const {
        if (length < 0.0) throw ConfigError("fibre: length must be >= 0");
        if (k1 < 0.0) throw ConfigError("fibre: k1 must be >= 0");
    }
    double group_delay() const { return k1 * length; }
    bool present() const { return k2 * length > 0.0; }
};

struct PolarizerPair {
    double alpha1 = 0.0; // radians from horizontal, interpreted mod pi
    double alpha2 = 0.0;
};

struct AnalyzerConfig {
    std::optional<PolarizerPair> polarizers;
    double compensation_delay = 0.0; // tau_c, >= 0

    void validate() const {
        if (compensation_delay < 0.0)
            throw ConfigError("analyzer: compensation delay must be >= 0");
    }
};

struct TimeGrid {
    double start = 0.0;
    double step = 0.0;
    std::int64_t count = 0;

    void validate() const {
        if (!(step > 0.0)) throw ConfigError("grid: step must be > 0");
        if (count < 2) throw ConfigError("grid: need at least 2 points");
    }
    double at(std::int64_t i) const { return start + static_cast<double>(i) * step; }
    double end() const { return at(count - 1); }

    // Symmetric about zero with a grid point exactly at zero; fp-exact
    // pairing theta(i) == -theta(count-1-i).
    static TimeGrid centered(double half_span, std::int64_t half_count) {
        TimeGrid g;
        g.step = half_span / static_cast<double>(half_count);
        g.start = -g.step * static_cast<double>(half_count);
        g.count = 2 * half_count + 1;
        return g;
    }
    static TimeGrid spanning(double half_span, std::int64_t count) {
        TimeGrid g;
        g.count = count;
        g.step = 2.0 * half_span / static_cast<double>(count - 1);
        g.start = -half_span;
        return g;
    }
};

struct CorrelationCurve {
    TimeGrid grid;
    std::vector<double> values; // nonnegative rate density, arbitrary units
    std::string normalization_note;

    void validate() const {
        grid.validate();
        if (static_cast<std::int64_t>(values.size()) != grid.count)
            throw ConfigError("curve: value count does not match grid");
    }
};

struct ComplexAmplitudeSample {
    double theta = 0.0;
    double real = 0.0;
    double imag = 0.0;
};

struct JitterModel {
    double fwhm = 0.0; // Gaussian FWHM; 0 means ideal detection

    void validate() const {
        if (fwhm < 0.0) throw ConfigError("jitter: FWHM must be >= 0");
    }
};

struct McaConfig {
    double channel_width = 0.0;
    std::int64_t channel_count = 0;
    double origin = 0.0; // left edge of channel 0

    void validate() const {
        if (!(channel_width > 0.0)) throw ConfigError("mca: channel width must be > 0");
        if (channel_count < 1) throw ConfigError("mca: need at least 1 channel");
    }
    double left_edge(std::int64_t i) const {
        return origin + static_cast<double>(i) * channel_width;
    }
    double span_end() const { return left_edge(channel_count); }
    bool operator==(const McaConfig&) const = default;
};

struct CoincidenceHistogram {
    McaConfig config;
    std::vector<double> counts; // real for expected, integral for sampled
    double underflow = 0.0;
    double overflow = 0.0;
    double tac_dropped = 0.0;      // outside the TAC acceptance range
    double accidental_total = 0.0; // background counts included in `counts`

    double recorded_total() const {
        double s = 0.0;
        for (double c : counts) s += c;
        return s;
    }
};

} // namespace biphoton
