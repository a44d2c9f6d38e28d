#include "config.hpp"

#include "errors.hpp"
#include "units.hpp"

#include <cctype>
#include <fstream>

namespace biphoton {

namespace {
std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}
} // namespace

ScenarioKind scenario_from_name(std::string_view name) {
    if (name == "fig2a") return ScenarioKind::fig2a;
    if (name == "fig2b") return ScenarioKind::fig2b;
    if (name == "fig3_sim") return ScenarioKind::fig3_sim;
    if (name == "compensation_sweep") return ScenarioKind::compensation_sweep;
    if (name == "jitter_sweep") return ScenarioKind::jitter_sweep;
    if (name == "dispersion_estimate") return ScenarioKind::dispersion_estimate;
    if (name == "custom") return ScenarioKind::custom;
    throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

std::string_view scenario_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::fig2a: return "fig2a";
        case ScenarioKind::fig2b: return "fig2b";
        case ScenarioKind::fig3_sim: return "fig3_sim";
        case ScenarioKind::compensation_sweep: return "compensation_sweep";
        case ScenarioKind::jitter_sweep: return "jitter_sweep";
        case ScenarioKind::dispersion_estimate: return "dispersion_estimate";
        case ScenarioKind::custom: return "custom";
    }
    return "custom";
}

EmitFlags parse_emit_flags(std::string_view list) {
    EmitFlags flags{false, false, false};
    size_t pos = 0;
    while (pos <= list.size()) {
        const size_t comma = list.find(',', pos);
        const auto item = trim(list.substr(pos, comma == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : comma - pos));
        if (item == "curves") flags.curves = true;
        else if (item == "hist" || item == "histograms") flags.histograms = true;
        else if (item == "summary") flags.summary = true;
        else if (item == "all") flags = EmitFlags{true, true, true};
        else if (!item.empty())
            throw ConfigError("unknown emit flag '" + std::string(item) + "'");
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return flags;
}

void apply_config_line(ScenarioConfig& c, std::string_view key, std::string_view value) {
    using namespace dims;
    if (key == "scenario") {
        c.scenario = scenario_from_name(trim(value));
    } else if (key == "source.crystal_length") {
        c.source.crystal_length = parse_quantity(value, length, key);
    } else if (key == "source.inverse_gv_difference") {
        c.source.inverse_gv_difference = parse_quantity(value, time_per_length, key);
    } else if (key == "source.pump_half_frequency") {
        c.source.pump_half_frequency = parse_quantity(value, rate, key);
    } else if (key == "fibre.k1") {
        c.fibre.k1 = parse_quantity(value, time_per_length, key);
    } else if (key == "fibre.k2") {
        c.fibre.k2 = parse_quantity(value, time2_per_length, key);
    } else if (key == "fibre.length") {
        c.fibre.length = parse_quantity(value, length, key);
    } else if (key == "analyzer.alpha1") {
        if (!c.custom_polarizers) c.custom_polarizers = PolarizerPair{};
        c.custom_polarizers->alpha1 = parse_quantity(value, angle, key);
    } else if (key == "analyzer.alpha2") {
        if (!c.custom_polarizers) c.custom_polarizers = PolarizerPair{};
        c.custom_polarizers->alpha2 = parse_quantity(value, angle, key);
    } else if (key == "analyzer.polarizers") {
        const auto v = trim(value);
        if (v == "none") {
            c.custom_polarizers_none = true;
            c.custom_polarizers.reset();
        } else if (v == "pair") {
            c.custom_polarizers_none = false;
            if (!c.custom_polarizers) c.custom_polarizers = PolarizerPair{};
        } else {
            throw ConfigError("analyzer.polarizers must be 'pair' or 'none'");
        }
    } else if (key == "analyzer.compensation_delay") {
        c.analyzer.compensation_delay = parse_quantity(value, time, key);
    } else if (key == "jitter.fwhm") {
        c.jitter.fwhm = parse_quantity(value, time, key);
    } else if (key == "mca.channel_width") {
        c.mca.channel_width = parse_quantity(value, time, key);
        if (c.mca_origin_auto)
            c.mca.origin = -static_cast<double>(c.mca.channel_count) * c.mca.channel_width / 2.0;
    } else if (key == "mca.channel_count") {
        c.mca.channel_count = parse_integer(value, key);
        if (c.mca_origin_auto)
            c.mca.origin = -static_cast<double>(c.mca.channel_count) * c.mca.channel_width / 2.0;
    } else if (key == "mca.origin") {
        if (trim(value) == "auto") {
            c.mca_origin_auto = true;
            c.mca.origin = -static_cast<double>(c.mca.channel_count) * c.mca.channel_width / 2.0;
        } else {
            c.mca_origin_auto = false;
            c.mca.origin = parse_quantity(value, time, key);
        }
    } else if (key == "events.pair_count") {
        c.events.pair_count = parse_integer(value, key);
    } else if (key == "events.pair_rate") {
        c.events.pair_rate = parse_quantity(value, rate, key);
        c.events.pair_count.reset();
    } else if (key == "events.duration") {
        c.events.duration = parse_quantity(value, time, key);
    } else if (key == "events.accidental_rate_density") {
        c.events.accidental_rate_density = parse_quantity(value, rate_density, key);
    } else if (key == "events.seed") {
        c.events.rng_seed = static_cast<std::uint64_t>(parse_integer(value, key));
    } else if (key == "tac.applied_delay") {
        c.tac.applied_delay = parse_quantity(value, time, key);
    } else if (key == "tac.range_min") {
        c.tac.range_min = parse_quantity(value, time, key);
    } else if (key == "tac.range_max") {
        c.tac.range_max = parse_quantity(value, time, key);
    } else if (key == "grid.points") {
        c.grid_points = parse_integer(value, key);
    } else if (key == "grid.half_span") {
        if (trim(value) == "auto") c.grid_half_span.reset();
        else c.grid_half_span = parse_quantity(value, time, key);
    } else if (key == "sweep.steps") {
        c.sweep_steps = parse_integer(value, key);
    } else if (key == "sweep.jitter_max") {
        c.sweep_jitter_max = parse_quantity(value, time, key);
    } else if (key == "estimate.bracket_low") {
        c.estimate_bracket_low = parse_quantity(value, time2_per_length, key);
    } else if (key == "estimate.bracket_high") {
        c.estimate_bracket_high = parse_quantity(value, time2_per_length, key);
    } else if (key == "estimate.log_tolerance") {
        c.estimate_log_tolerance = parse_double(value, key);
    } else if (key == "estimate.events") {
        c.estimate_events = parse_integer(value, key);
    } else if (key == "output.directory") {
        c.output_directory = std::string(trim(value));
    } else if (key == "output.emit") {
        c.emit = parse_emit_flags(value);
    } else {
        throw ConfigError("unknown configuration key '" + std::string(key) + "'");
    }
}

ScenarioConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    ScenarioConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = line;
        if (auto hash = text.find('#'); hash != std::string_view::npos)
            text = text.substr(0, hash);
        text = trim(text);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + std::string(text) + "'");
        const auto key = trim(text.substr(0, eq));
        const auto value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
        apply_config_line(config, key, value);
    }
    config.validate();
    return config;
}

void ScenarioConfig::validate() const {
    source.validate();
    fibre.validate();
    analyzer.validate();
    jitter.validate();
    mca.validate();
    events.validate();
    tac.validate();
    if (grid_points < 2) throw ConfigError("grid.points must be >= 2");
    if (grid_half_span && !(*grid_half_span > 0.0))
        throw ConfigError("grid.half_span must be > 0");
    if (sweep_steps < 2) throw ConfigError("sweep.steps must be >= 2");
    if (!(sweep_jitter_max > 0.0)) throw ConfigError("sweep.jitter_max must be > 0");
    if (!(estimate_bracket_low > 0.0) || !(estimate_bracket_high > estimate_bracket_low))
        throw ConfigError("estimate bracket must satisfy 0 < low < high");
    if (!(estimate_log_tolerance > 0.0))
        throw ConfigError("estimate.log_tolerance must be > 0");
    if (estimate_events < 1) throw ConfigError("estimate.events must be >= 1");
}

} // namespace biphoton
