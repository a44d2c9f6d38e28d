#include "scenario.hpp"

#include "detection.hpp"
#include "montecarlo.hpp"
#include "physics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <vector>

namespace biphoton {

namespace {

constexpr double kDiagonal = std::numbers::pi / 4.0;
constexpr double kFwhmToSigma = 0.42466090014400953;

std::filesystem::path out_path(const ScenarioConfig& cfg, std::string_view name) {
    return std::filesystem::path(cfg.output_directory) / name;
}

void add(Summary& s, std::string key, double v) {
    s.emplace_back(std::move(key), format_summary_value(v));
}
void add(Summary& s, std::string key, std::int64_t v) {
    s.emplace_back(std::move(key), std::to_string(v));
}
void add(Summary& s, std::string key, bool v) {
    s.emplace_back(std::move(key), v ? "true" : "false");
}

AnalyzerConfig diagonal_pair(double sign, double compensation) {
    AnalyzerConfig a;
    a.polarizers = PolarizerPair{kDiagonal, sign * kDiagonal};
    a.compensation_delay = compensation;
    return a;
}

AnalyzerConfig no_polarizers(double compensation) {
    AnalyzerConfig a;
    a.compensation_delay = compensation;
    return a;
}

TimeGrid scenario_grid(const ScenarioConfig& cfg, double spread) {
    const double half = cfg.grid_half_span.value_or(5.0 * spread);
    return TimeGrid::spanning(half, cfg.grid_points);
}

double central_window_half(const ScenarioConfig& cfg) {
    return cfg.mca.channel_width / 2.0;
}

// Analytic jitter-only baseline: the pre-fibre no-polarizer peak (two
// adjacent rectangles, total width 4 tau0) convolved with the detector
// response. Grid step tau0/4 resolves the rectangles.
double baseline_fwhm(const ScenarioConfig& cfg, double tau0) {
    const TimeGrid grid = TimeGrid::centered(4.0 * tau0, 16);
    const CorrelationCurve bare =
        g2_pre_fibre(grid, cfg.source, no_polarizers(cfg.analyzer.compensation_delay));
    return fwhm(convolve_jitter(bare, cfg.jitter));
}

struct PairCurves {
    CorrelationCurve plus;
    CorrelationCurve minus;
    CorrelationCurve nopol;
};

PairCurves dispersed_set(const ScenarioConfig& cfg, const TimeGrid& grid) {
    const double tc = cfg.analyzer.compensation_delay;
    return {g2_dispersed(grid, cfg.source, cfg.fibre, diagonal_pair(+1.0, tc)),
            g2_dispersed(grid, cfg.source, cfg.fibre, diagonal_pair(-1.0, tc)),
            g2_dispersed(grid, cfg.source, cfg.fibre, no_polarizers(tc))};
}

Summary scenario_header(const ScenarioConfig& cfg, ScenarioKind kind, double tau0,
                        double spread) {
    Summary s;
    s.emplace_back("scenario", std::string(scenario_name(kind)));
    add(s, "tau0_s", tau0);
    add(s, "tau_f_s", spread);
    const FarFieldReport ff = far_field_check(cfg.source, cfg.fibre);
    add(s, "far_field_ratio", ff.ratio);
    add(s, "far_field_valid", ff.valid);
    return s;
}

Summary run_fig2(const ScenarioConfig& cfg, bool with_jitter) {
    const double tau0 = eo_delay(cfg.source);
    const double spread = spread_width(cfg.fibre, tau0);
    const TimeGrid grid = scenario_grid(cfg, spread);
    PairCurves curves = dispersed_set(cfg, grid);

    const ScenarioKind kind = with_jitter ? ScenarioKind::fig2b : ScenarioKind::fig2a;
    Summary s = scenario_header(cfg, kind, tau0, spread);
    if (with_jitter) {
        add(s, "jitter_fwhm_s", cfg.jitter.fwhm);
        curves.plus = convolve_jitter(curves.plus, cfg.jitter);
        curves.minus = convolve_jitter(curves.minus, cfg.jitter);
        curves.nopol = convolve_jitter(curves.nopol, cfg.jitter);
    }

    const double w = central_window_half(cfg);
    add(s, "fwhm_nopol_s", fwhm(curves.nopol));
    add(s, "visibility_central", visibility(curves.plus, curves.minus, -w, w));
    const double rp = integrated_rate(curves.plus);
    const double rm = integrated_rate(curves.minus);
    add(s, "rate_plus", rp);
    add(s, "rate_minus", rm);
    add(s, "visibility_integrated", (rp - rm) / (rp + rm));

    if (cfg.emit.curves) {
        const auto name = with_jitter ? "fig2b_curves.csv" : "fig2a_curves.csv";
        write_paired_curve_csv(out_path(cfg, name), curves.plus, curves.minus);
    }
    return s;
}

struct SampledRun {
    CoincidenceHistogram hist;
    std::int64_t events = 0;
};

SampledRun sample_run(const ScenarioConfig& cfg, const CorrelationCurve& curve,
                      std::uint64_t seed) {
    EventSimConfig ev = cfg.events;
    ev.rng_seed = seed;
    ev.jitter = cfg.jitter;
    const auto delays = sample_coincidences(curve, ev);
    SampledRun run;
    run.events = static_cast<std::int64_t>(delays.size());
    run.hist = accumulate_tac(delays, cfg.tac, cfg.mca, ev);
    return run;
}

std::int64_t channel_of(const McaConfig& mca, double t) {
    return static_cast<std::int64_t>(std::floor((t - mca.origin) / mca.channel_width));
}

double neighborhood_mean(const CoincidenceHistogram& hist, std::int64_t center,
                         std::int64_t halfwidth) {
    const std::int64_t lo = std::max<std::int64_t>(0, center - halfwidth);
    const std::int64_t hi = std::min(hist.config.channel_count - 1, center + halfwidth);
    double sum = 0.0;
    for (std::int64_t i = lo; i <= hi; ++i) sum += hist.counts[static_cast<size_t>(i)];
    return sum / static_cast<double>(hi - lo + 1);
}

// Mean counts around theta = 0 relative to the mean counts around the two
// side-lobe maxima, searched in |theta| between inner and outer.
double dip_ratio(const CoincidenceHistogram& hist, double inner, double outer) {
    const McaConfig& mca = hist.config;
    const std::int64_t center = channel_of(mca, 0.0);
    const double center_mean = neighborhood_mean(hist, center, 5);
    double side_means = 0.0;
    for (const double side : {-1.0, +1.0}) {
        std::int64_t best = -1;
        double best_counts = -1.0;
        for (std::int64_t i = 0; i < mca.channel_count; ++i) {
            const double mid = mca.left_edge(i) + mca.channel_width / 2.0;
            if (side * mid < inner || side * mid > outer) continue;
            if (hist.counts[static_cast<size_t>(i)] > best_counts) {
                best_counts = hist.counts[static_cast<size_t>(i)];
                best = i;
            }
        }
        if (best < 0) throw NumericError("dip_ratio: no channels in the side-lobe window");
        side_means += neighborhood_mean(hist, best, 5);
    }
    return center_mean / (side_means / 2.0);
}

Summary run_fig3_sim(const ScenarioConfig& cfg) {
    const double tau0 = eo_delay(cfg.source);
    const double spread = spread_width(cfg.fibre, tau0);
    const TimeGrid grid = scenario_grid(cfg, spread);
    const PairCurves curves = dispersed_set(cfg, grid);

    const std::uint64_t seed = cfg.events.rng_seed;
    const SampledRun run_a = sample_run(cfg, curves.nopol, seed);
    const SampledRun run_b = sample_run(cfg, curves.plus, seed + 1);
    const SampledRun run_c = sample_run(cfg, curves.minus, seed + 2);

    Summary s = scenario_header(cfg, ScenarioKind::fig3_sim, tau0, spread);
    add(s, "jitter_fwhm_s", cfg.jitter.fwhm);
    add(s, "events_per_run", run_a.events);
    add(s, "model_fwhm_nopol_s", fwhm(curves.nopol));
    if (cfg.jitter.fwhm > 0.0) add(s, "baseline_fwhm_s", baseline_fwhm(cfg, tau0));
    add(s, "hist_fwhm_nopol_s", fwhm(histogram_as_curve(run_a.hist)));

    const std::int64_t center = channel_of(cfg.mca, 0.0);
    const double nb = run_b.hist.counts[static_cast<size_t>(center)];
    const double nc = run_c.hist.counts[static_cast<size_t>(center)];
    add(s, "central_counts_plus", nb);
    add(s, "central_counts_minus", nc);
    add(s, "visibility_sampled_central", (nb - nc) / (nb + nc));
    add(s, "dip_ratio_sampled", dip_ratio(run_c.hist, 0.1e-9, 3e-9));

    if (cfg.emit.histograms) {
        write_histogram(out_path(cfg, "fig3a_hist.txt"), run_a.hist);
        write_histogram(out_path(cfg, "fig3b_hist.txt"), run_b.hist);
        write_histogram(out_path(cfg, "fig3c_hist.txt"), run_c.hist);
    }
    if (cfg.emit.curves)
        write_paired_curve_csv(out_path(cfg, "fig3_model_curves.csv"), curves.plus,
                               curves.minus);
    return s;
}

Summary run_compensation_sweep(const ScenarioConfig& cfg) {
    const double tau0 = eo_delay(cfg.source);
    const double spread = spread_width(cfg.fibre, tau0);
    // Integrated rates need the oscillatory tails; a 1000 tau_f span keeps
    // the truncation bias of the +- rate difference near 3e-4 relative.
    const TimeGrid grid =
        TimeGrid::spanning(cfg.grid_half_span.value_or(1000.0 * spread), 1 << 18);

    std::vector<std::pair<double, double>> points;
    points.reserve(static_cast<size_t>(cfg.sweep_steps));
    for (std::int64_t i = 0; i < cfg.sweep_steps; ++i) {
        const double tc = tau0 * static_cast<double>(i) / static_cast<double>(cfg.sweep_steps - 1);
        const CorrelationCurve gp =
            g2_dispersed(grid, cfg.source, cfg.fibre, diagonal_pair(+1.0, tc));
        const CorrelationCurve gm =
            g2_dispersed(grid, cfg.source, cfg.fibre, diagonal_pair(-1.0, tc));
        const double rp = integrated_rate(gp);
        const double rm = integrated_rate(gm);
        points.emplace_back(tc, (rp - rm) / (rp + rm));
    }

    Summary s = scenario_header(cfg, ScenarioKind::compensation_sweep, tau0, spread);
    add(s, "sweep_steps", cfg.sweep_steps);
    add(s, "visibility_at_zero", points.front().second);
    add(s, "visibility_at_full", points.back().second);
    bool monotone = true;
    for (size_t i = 1; i < points.size(); ++i)
        if (points[i].second < points[i - 1].second - 1e-9) monotone = false;
    add(s, "monotone_nondecreasing", monotone);

    if (cfg.emit.curves) {
        auto path = out_path(cfg, "compensation_sweep.csv");
        std::ofstream out(path);
        if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
        out << "tau_c_s,visibility\n";
        for (const auto& [tc, v] : points)
            out << format_double(tc) << ',' << format_double(v) << '\n';
    }
    return s;
}

Summary run_jitter_sweep(const ScenarioConfig& cfg) {
    const double tau0 = eo_delay(cfg.source);
    const double spread = spread_width(cfg.fibre, tau0);
    const TimeGrid grid = scenario_grid(cfg, spread);
    const double tc = cfg.analyzer.compensation_delay;
    const CorrelationCurve gp = g2_dispersed(grid, cfg.source, cfg.fibre, diagonal_pair(+1.0, tc));
    const CorrelationCurve gm = g2_dispersed(grid, cfg.source, cfg.fibre, diagonal_pair(-1.0, tc));
    const double w = central_window_half(cfg);

    std::vector<std::pair<double, double>> points;
    for (std::int64_t i = 0; i < cfg.sweep_steps; ++i) {
        const double f =
            cfg.sweep_jitter_max * static_cast<double>(i) / static_cast<double>(cfg.sweep_steps - 1);
        const JitterModel jitter{f};
        const double v = visibility(convolve_jitter(gp, jitter), convolve_jitter(gm, jitter), -w, w);
        points.emplace_back(f, v);
    }

    Summary s = scenario_header(cfg, ScenarioKind::jitter_sweep, tau0, spread);
    add(s, "sweep_steps", cfg.sweep_steps);
    add(s, "visibility_at_zero_jitter", points.front().second);
    for (const auto& [f, v] : points)
        if (f == 750e-12) add(s, "visibility_at_750ps", v);
    bool monotone = true;
    for (size_t i = 1; i < points.size(); ++i)
        if (points[i].second > points[i - 1].second + 1e-9) monotone = false;
    add(s, "monotone_nonincreasing", monotone);

    if (cfg.emit.curves) {
        auto path = out_path(cfg, "jitter_sweep.csv");
        std::ofstream out(path);
        if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
        out << "jitter_fwhm_s,visibility\n";
        for (const auto& [f, v] : points)
            out << format_double(f) << ',' << format_double(v) << '\n';
    }
    return s;
}

// The estimator and the synthetic data generation share this grid so the
// forward model covers the whole MCA range regardless of k''.
TimeGrid estimation_grid(const ScenarioConfig& cfg, double spread) {
    const double sigma = cfg.jitter.fwhm * kFwhmToSigma;
    const double reach = 4.0 * sigma;
    const double half = std::max({5.0 * spread, std::abs(cfg.mca.origin) + reach,
                                  std::abs(cfg.mca.span_end()) + reach});
    return TimeGrid::spanning(half, cfg.grid_points);
}

Summary run_dispersion_estimate(const ScenarioConfig& cfg) {
    const double tau0 = eo_delay(cfg.source);
    const double spread = spread_width(cfg.fibre, tau0);
    const TimeGrid grid = estimation_grid(cfg, spread);
    const CorrelationCurve model =
        g2_dispersed(grid, cfg.source, cfg.fibre, no_polarizers(0.0));

    EventSimConfig ev = cfg.events;
    ev.pair_count = cfg.estimate_events;
    ev.jitter = cfg.jitter;
    const auto delays = sample_coincidences(model, ev);
    const CoincidenceHistogram measured = accumulate_tac(delays, cfg.tac, cfg.mca, ev);

    const DispersionEstimate est = estimate_dispersion(measured, cfg);

    Summary s = scenario_header(cfg, ScenarioKind::dispersion_estimate, tau0, spread);
    add(s, "events", cfg.estimate_events);
    add(s, "k2_true_s2_per_m", cfg.fibre.k2);
    add(s, "k2_hat_s2_per_m", est.k2_hat);
    add(s, "relative_error", est.k2_hat / cfg.fibre.k2 - 1.0);
    add(s, "objective_residual", est.objective_residual);
    add(s, "iterations", est.iterations);
    add(s, "bracket_low_s2_per_m", est.bracket_low);
    add(s, "bracket_high_s2_per_m", est.bracket_high);

    if (cfg.emit.histograms)
        write_histogram(out_path(cfg, "dispersion_measured_hist.txt"), measured);
    return s;
}

Summary run_custom(const ScenarioConfig& cfg) {
    const double tau0 = eo_delay(cfg.source);
    AnalyzerConfig analyzer = cfg.analyzer;
    if (cfg.custom_polarizers && !cfg.custom_polarizers_none)
        analyzer.polarizers = cfg.custom_polarizers;

    CorrelationCurve curve;
    double spread = 0.0;
    if (cfg.fibre.present()) {
        spread = spread_width(cfg.fibre, tau0);
        curve = g2_dispersed(scenario_grid(cfg, spread), cfg.source, cfg.fibre, analyzer);
    } else {
        const double half = cfg.grid_half_span.value_or(
            4.0 * tau0 + 2.0 * analyzer.compensation_delay);
        curve = g2_pre_fibre(TimeGrid::spanning(half, cfg.grid_points), cfg.source, analyzer);
    }

    Summary s;
    s.emplace_back("scenario", std::string(scenario_name(ScenarioKind::custom)));
    add(s, "tau0_s", tau0);
    if (cfg.fibre.present()) add(s, "tau_f_s", spread);
    add(s, "jitter_fwhm_s", cfg.jitter.fwhm);

    CorrelationCurve observed = convolve_jitter(curve, cfg.jitter);
    add(s, "integrated_rate", integrated_rate(observed));
    try {
        add(s, "fwhm_s", fwhm(observed));
    } catch (const NumericError&) {
        s.emplace_back("fwhm_s", "undefined");
    }

    if (cfg.emit.curves) {
        write_curve_csv(out_path(cfg, "custom_curve.csv"), curve);
        if (cfg.jitter.fwhm > 0.0)
            write_curve_csv(out_path(cfg, "custom_curve_convolved.csv"), observed);
    }
    if (cfg.events.pair_count.value_or(0) > 0 || !cfg.events.pair_count) {
        const SampledRun run = sample_run(cfg, curve, cfg.events.rng_seed);
        add(s, "events", run.events);
        add(s, "recorded_counts", run.hist.recorded_total());
        add(s, "tac_dropped", run.hist.tac_dropped);
        if (cfg.emit.histograms)
            write_histogram(out_path(cfg, "custom_hist.txt"), run.hist);
    }
    return s;
}

} // namespace

CorrelationCurve histogram_as_curve(const CoincidenceHistogram& hist) {
    CorrelationCurve curve;
    curve.grid.start = hist.config.origin + hist.config.channel_width / 2.0;
    curve.grid.step = hist.config.channel_width;
    curve.grid.count = hist.config.channel_count;
    curve.values = hist.counts;
    curve.normalization_note = "histogram counts";
    return curve;
}

DispersionEstimate estimate_dispersion(const CoincidenceHistogram& measured,
                                       const ScenarioConfig& known) {
    known.source.validate();
    if (!(known.fibre.length > 0.0))
        throw ConfigError("estimate_dispersion: fibre length must be > 0");
    measured.config.validate();

    const double total = measured.recorded_total();
    if (!(total > 0.0))
        throw NumericError("estimate_dispersion: measured histogram is empty");
    if (known.jitter.fwhm > 0.0) {
        const double peak_width = fwhm(histogram_as_curve(measured));
        if (peak_width <= known.jitter.fwhm)
            throw NumericError("estimate_dispersion: peak not broader than the jitter "
                               "response; dispersion is under-determined");
    }

    std::vector<double> target(measured.counts.size());
    for (size_t i = 0; i < target.size(); ++i) target[i] = measured.counts[i] / total;

    std::int64_t evaluations = 0;
    auto objective = [&](double log_k2) {
        ++evaluations;
        ScenarioConfig trial = known;
        trial.fibre.k2 = std::exp(log_k2);
        const double tau0 = eo_delay(trial.source);
        const double spread = spread_width(trial.fibre, tau0);
        const TimeGrid grid = estimation_grid(trial, spread);
        CorrelationCurve curve = g2_dispersed(grid, trial.source, trial.fibre, AnalyzerConfig{});
        curve = convolve_jitter(curve, trial.jitter);
        const CoincidenceHistogram model = bin_histogram(curve, measured.config, 1.0);
        const double model_total = model.recorded_total();
        if (!(model_total > 0.0)) return std::numeric_limits<double>::infinity();
        double sum = 0.0;
        for (size_t i = 0; i < target.size(); ++i) {
            const double d = model.counts[i] / model_total - target[i];
            sum += d * d;
        }
        return sum;
    };

    // Golden-section in log(k''): k'' is positive and spans decades.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::log(known.estimate_bracket_low);
    double hi = std::log(known.estimate_bracket_high);
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = objective(c);
    double fd = objective(d);
    while (hi - lo > known.estimate_log_tolerance) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = objective(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = objective(d);
        }
    }
    const double log_hat = (lo + hi) / 2.0;

    const double full_lo = std::log(known.estimate_bracket_low);
    const double full_hi = std::log(known.estimate_bracket_high);
    if (std::min(log_hat - full_lo, full_hi - log_hat) < 10.0 * known.estimate_log_tolerance)
        throw NumericError("estimate_dispersion: no convergence, estimate pinned at the "
                           "search bracket boundary");

    DispersionEstimate est;
    est.k2_hat = std::exp(log_hat);
    est.objective_residual = objective(log_hat);
    est.iterations = evaluations;
    est.bracket_low = known.estimate_bracket_low;
    est.bracket_high = known.estimate_bracket_high;
    return est;
}

Summary run_scenario(const ScenarioConfig& config, const RunOptions& options) {
    ScenarioConfig cfg = config;
    if (options.output_directory) cfg.output_directory = *options.output_directory;
    if (options.emit) cfg.emit = *options.emit;
    if (options.seed) cfg.events.rng_seed = *options.seed;
    cfg.validate();

    ScenarioKind kind;
    if (options.scenario) kind = *options.scenario;
    else if (cfg.scenario) kind = *cfg.scenario;
    else throw ConfigError("no scenario selected (pass --scenario or set 'scenario = ...')");

    std::error_code ec;
    std::filesystem::create_directories(cfg.output_directory, ec);
    if (ec) throw IoError("cannot create output directory '" + cfg.output_directory + "'");

    Summary summary;
    switch (kind) {
        case ScenarioKind::fig2a: summary = run_fig2(cfg, false); break;
        case ScenarioKind::fig2b: summary = run_fig2(cfg, true); break;
        case ScenarioKind::fig3_sim: summary = run_fig3_sim(cfg); break;
        case ScenarioKind::compensation_sweep: summary = run_compensation_sweep(cfg); break;
        case ScenarioKind::jitter_sweep: summary = run_jitter_sweep(cfg); break;
        case ScenarioKind::dispersion_estimate: summary = run_dispersion_estimate(cfg); break;
        case ScenarioKind::custom: summary = run_custom(cfg); break;
    }

    if (cfg.emit.summary) {
        const auto name = std::string(scenario_name(kind)) + "_summary.txt";
        write_summary(out_path(cfg, name), summary);
    }
    return summary;
}

} // namespace biphoton
