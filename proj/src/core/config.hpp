#pragma once

#include "montecarlo.hpp"
#include "types.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>

namespace biphoton {

enum class ScenarioKind {
    fig2a,
    fig2b,
    fig3_sim,
    compensation_sweep,
    jitter_sweep,
    dispersion_estimate,
    custom,
};

ScenarioKind scenario_from_name(std::string_view name);
std::string_view scenario_name(ScenarioKind kind);

struct EmitFlags {
    bool curves = true;
    bool histograms = true;
    bool summary = true;
};

EmitFlags parse_emit_flags(std::string_view list);

// Flat "block.key = value" configuration with unit-suffixed numbers.
// Built-in defaults reproduce the published operating point: D = 1.5 ps/cm,
// L = 0.05 cm, k'' = 3.2e-28 s^2/cm, z = 250 m, 2.5 ps MCA channels and a
// 750 ps jitter where a jittered scenario calls for one.
struct ScenarioConfig {
    std::optional<ScenarioKind> scenario;

    SpdcSource source{5e-4, 1.5e-10, 2.683e15};
    DispersiveFibre fibre{0.0, 3.2e-26, 250.0};
    AnalyzerConfig analyzer;               // custom scenario only
    std::optional<PolarizerPair> custom_polarizers;
    bool custom_polarizers_none = false;

    JitterModel jitter{750e-12};
    McaConfig mca{2.5e-12, 3201, -3201 * 2.5e-12 / 2.0};
    bool mca_origin_auto = true;           // re-center when count changes

    EventSimConfig events;
    TacModel tac;

    std::int64_t grid_points = 1 << 14;
    std::optional<double> grid_half_span;  // default 5 tau_f (4 tau0 pre-fibre)

    std::int64_t sweep_steps = 11;
    double sweep_jitter_max = 1.5e-9;

    double estimate_bracket_low = 1e-28;   // s^2/m
    double estimate_bracket_high = 1e-22;  // s^2/m
    double estimate_log_tolerance = 1e-4;
    std::int64_t estimate_events = 1'000'000;

    std::string output_directory = ".";
    EmitFlags emit;

    ScenarioConfig() {
        events.pair_count = 1'000'000;
        events.rng_seed = 12345;
    }

    void validate() const;
};

ScenarioConfig parse_config_file(const std::filesystem::path& path);
void apply_config_line(ScenarioConfig& config, std::string_view key, std::string_view value);

} // namespace biphoton
