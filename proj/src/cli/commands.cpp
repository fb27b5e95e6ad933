#include "sfwm/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cctype>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "sfwm/cli/svg_plot.hpp"
#include "sfwm/constants.hpp"
#include "sfwm/errors.hpp"

namespace sfwm::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kRadPerTHz = constants::kTwoPi * 1e12;

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string safe_name(const std::string& s) {
    std::string out = s;
    for (char& c : out) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) c = '_';
    }
    return out;
}

fs::path emit(const fs::path& dir, const std::string& name, const std::string& text,
              std::vector<fs::path>& files) {
    const fs::path p = dir / name;
    write_text_file(p, text);
    files.push_back(p);
    return p;
}

std::vector<double> detuning_axis_thz(const SpectralGrid& g) {
    std::vector<double> x(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) x[i] = g.detuning(i) / kRadPerTHz;
    return x;
}

SpectralGrid with_points(const SpectralGrid& g, const std::optional<std::size_t>& n) {
    if (!n) return g;
    if (*n < 2) throw ConfigError("--grid-points: at least 2 points are required");
    return SpectralGrid::centred(g.centre(), g.half_span(), *n);
}

}  // namespace

std::string effective_config_hash(const json& root, const RunOptions& options,
                                  const std::string& command) {
    json eff;
    eff["command"] = command;
    eff["config"] = root;
    eff["seed"] = options.seed;
    if (options.grid_points) eff["grid_points"] = *options.grid_points;
    if (options.all_strip) eff["all_strip"] = true;
    if (options.template_name) eff["template"] = *options.template_name;
    if (options.synthesize) eff["synthesize"] = true;
    return config_hash(eff);
}

SpectrumRun run_spectrum(const ConfigDocument& doc, const RunOptions& options) {
    SpectrumConfig cfg = parse_spectrum_config(doc);
    const SpectralGrid grid = with_points(cfg.grid, options.grid_points);
    SpectrumRun run{effective_config_hash(doc.root, options, "spectrum"), cfg.pump, {}, {}, {}};

    std::ostringstream rep;
    rep << "config_hash: " << run.config_hash << '\n';
    rep << "pump: " << (cfg.pump.mode() == PumpConfig::Mode::degenerate ? "degenerate" : "non-degenerate")
        << ", lines:";
    for (std::size_t k = 0; k < cfg.pump.line_count(); ++k) {
        rep << ' ' << fmt("%.3f nm", wavelength_from_angular_frequency(cfg.pump.line_omega(k)) * 1e9)
            << " @ " << fmt("%.4g W", cfg.pump.line_power(k));
    }
    rep << '\n';
    rep << "grid: " << grid.size() << " points, +/-" << fmt("%.4g", grid.half_span() / kRadPerTHz)
        << " THz\n";

    PlotOptions plot{"Biphoton spectra", "detuning (THz)", "flux density (1/(s Hz))", true};
    std::vector<PlotSeries> series;
    for (auto& [name, spec] : cfg.waveguides) {
        SpectrumEntry e{name, spec, biphoton_spectrum(spec, cfg.pump, grid, name), 0.0};
        e.bandwidth_3db_thz = 2.0 * half_max_half_width(e.spectrum) / kRadPerTHz;
        const std::string stem = safe_name(name);
        std::ostringstream s;
        write_spectrum_csv(s, e.spectrum, run.config_hash);
        emit(options.out_dir, "spectrum_" + stem + ".csv", s.str(), run.files);
        std::ostringstream m;
        write_mismatch_csv(m, spec, cfg.pump, grid, run.config_hash);
        emit(options.out_dir, "mismatch_" + stem + ".csv", m.str(), run.files);

        const double total = band_flux(e.spectrum, grid.omega_min(), grid.omega_max());
        rep << name << ": kind=" << to_string(spec.kind) << " L=" << fmt("%.4g mm", spec.length_m * 1e3)
            << " gamma=" << fmt("%.4g /(W m)", spec.gamma)
            << " 3dB_bandwidth=" << fmt("%.4g THz", e.bandwidth_3db_thz)
            << " grid_flux=" << fmt("%.4e /s", total) << '\n';
        if (options.svg) series.push_back({name, detuning_axis_thz(grid), e.spectrum.flux_density});
        run.entries.push_back(std::move(e));
    }
    if (options.svg) emit(options.out_dir, "spectrum.svg", render_line_plot(series, plot), run.files);
    run.report = rep.str();
    emit(options.out_dir, "spectrum_report.txt", run.report, run.files);
    return run;
}

CircuitRun run_circuit(const ConfigDocument* doc, const RunOptions& options) {
    CircuitConfig cfg{app1_timebin(), false};
    json root = json::object();
    if (doc) {
        ConfigDocument effective = *doc;
        if (options.template_name) {
            if (effective.root.contains("circuit")) {
                throw ConfigError("--template conflicts with the config's 'circuit' block");
            }
            effective.root["template"] = *options.template_name;
        }
        cfg = parse_circuit_config(effective);
        root = doc->root;
    } else if (options.template_name) {
        cfg.setup = circuit_template(*options.template_name);
    } else {
        throw ConfigError("circuit: a --config file or --template name is required");
    }
    CircuitTemplate setup = cfg.setup;
    const bool all_strip = cfg.all_strip || options.all_strip;
    if (all_strip) setup = all_strip_variant(setup);
    setup.grid = with_points(setup.grid, options.grid_points);

    CircuitRun run;
    run.config_hash = effective_config_hash(root, options, "circuit");
    run.template_name = setup.name;
    run.threshold = setup.ratio_threshold;

    const auto contributions = segment_contributions(setup.graph, setup.pump, setup.grid, setup.options);
    const double lo = setup.band_lo(), hi = setup.band_hi();
    run.ratio = selection_ratio(contributions, lo, hi, setup.designated);
    run.meets_threshold = run.ratio >= run.threshold;

    std::map<std::string, std::string> part_of(setup.groups.begin(), setup.groups.end());
    PlotOptions plot{"Segment contributions: " + setup.name, "detuning (THz)",
                     "flux density (1/(s Hz))", true};
    std::vector<PlotSeries> series;
    for (const auto& c : contributions) {
        ContributionRow row;
        row.segment_id = c.segment_id;
        row.part = part_of.count(c.segment_id) ? part_of[c.segment_id] : "segment";
        row.designated = std::find(setup.designated.begin(), setup.designated.end(), c.segment_id) !=
                         setup.designated.end();
        row.pump_power_w = std::accumulate(c.pump_power_w.begin(), c.pump_power_w.end(), 0.0);
        row.transmission = c.transmission;
        row.band_flux_per_s = band_flux(c.spectrum, lo, hi);
        run.rows.push_back(row);

        std::ostringstream s;
        write_spectrum_csv(s, c.spectrum, run.config_hash);
        emit(options.out_dir, "contrib_" + safe_name(c.segment_id) + ".csv", s.str(), run.files);
        if (options.svg) series.push_back({c.segment_id, detuning_axis_thz(setup.grid), c.spectrum.flux_density});
    }
    std::ostringstream summary;
    write_contribution_summary(summary, run.rows, run.ratio, setup.band_lo_detuning / kRadPerTHz,
                               setup.band_hi_detuning / kRadPerTHz, run.config_hash);
    emit(options.out_dir, "summary.csv", summary.str(), run.files);
    if (options.svg) emit(options.out_dir, "contributions.svg", render_line_plot(series, plot), run.files);

    const auto states = propagate_pump(setup.graph, setup.pump, setup.options);
    std::ostringstream rep;
    rep << "config_hash: " << run.config_hash << '\n';
    rep << "template: " << setup.name << (all_strip ? " (all-strip variant)" : "") << '\n';
    rep << "timing: " << (setup.options.timing == PumpTiming::pulsed ? "pulsed" : "cw") << '\n';
    rep << "pump report (peak power per line entering each segment):\n";
    for (const auto& st : states) {
        rep << "  " << st.segment_id << ':';
        for (double p : st.peak_power_w) rep << ' ' << fmt("%.6g W", p);
        rep << "  pulses=" << st.pulses.size() << '\n';
    }
    if (setup.options.timing == PumpTiming::pulsed) {
        for (const auto& st : states) {
            if (st.pulses.size() < 2) continue;
            const double d = inter_pulse_delay(states, st.segment_id);
            run.inter_pulse_delays.emplace_back(st.segment_id, d);
            rep << "inter_pulse_delay " << st.segment_id << ": " << fmt("%.3f ps", d * 1e12) << '\n';
        }
    }
    rep << "band: " << fmt("%.6g", setup.band_lo_detuning / kRadPerTHz) << " .. "
        << fmt("%.6g", setup.band_hi_detuning / kRadPerTHz) << " THz detuning\n";
    for (const auto& r : run.rows) {
        rep << "  " << r.segment_id << " [" << r.part << (r.designated ? ", designated" : "")
            << "] band_flux=" << fmt("%.6e /s", r.band_flux_per_s)
            << " transmission=" << fmt("%.4g", r.transmission) << '\n';
    }
    rep << "selection_ratio: " << fmt("%.6g", run.ratio) << '\n';
    rep << "threshold: " << fmt("%.4g", run.threshold) << ' '
        << (run.meets_threshold ? "MET" : "NOT MET (designated sources do not dominate)") << '\n';
    run.report = rep.str();
    emit(options.out_dir, "circuit_report.txt", run.report, run.files);
    return run;
}

GammaRun run_gamma(const ConfigDocument& doc, const RunOptions& options) {
    const GammaConfig cfg = parse_gamma_config(doc);
    if (cfg.modefield_csv.empty()) throw ConfigError("modefield_csv: missing mode-field file");
    std::ifstream in(cfg.modefield_csv);
    if (!in) throw DataError("cannot open '" + cfg.modefield_csv.string() + "'");
    ModeFieldGrid grid;
    try {
        grid = read_modefield_csv(in);
    } catch (const DataError& e) {
        throw DataError(cfg.modefield_csv.string() + ": " + e.what());
    }
    GammaRun run;
    run.config_hash = effective_config_hash(doc.root, options, "gamma");
    run.breakdown = effective_gamma_breakdown(grid, cfg.omega, cfg.material);

    std::ostringstream rep;
    rep << "config_hash: " << run.config_hash << '\n';
    rep << "modefield: " << cfg.modefield_csv.filename().string() << " (" << grid.nx() << " x "
        << grid.ny() << " points)\n";
    rep << "wavelength_nm: " << fmt("%.6g", wavelength_from_angular_frequency(cfg.omega) * 1e9) << '\n';
    rep << "n0: " << fmt("%.6g", cfg.material.n0) << '\n';
    rep << "n2_m2_per_w: " << fmt("%.6g", cfg.material.n2) << '\n';
    rep << "core_e4_integral_v4_per_m2: " << fmt("%.12e", run.breakdown.core_e4_integral) << '\n';
    rep << "poynting_integral_w: " << fmt("%.12e", run.breakdown.poynting_integral) << '\n';
    rep << "gamma_per_w_per_m: " << fmt("%.12g", run.breakdown.gamma) << '\n';
    if (options.verify_scale) {
        ModeFieldGrid scaled = grid;
        const double s = 3.7;
        for (auto& v : scaled.e_field) for (auto& c : v) c *= s;
        for (auto& v : scaled.h_field) for (auto& c : v) c *= s;
        const double g2 = effective_gamma(scaled, cfg.omega, cfg.material);
        run.scale_check_rel_diff = std::abs(g2 - run.breakdown.gamma) / run.breakdown.gamma;
        rep << "scale_check_rel_diff: " << fmt("%.3e", *run.scale_check_rel_diff) << ' '
            << (*run.scale_check_rel_diff <= 1e-12 ? "OK" : "FAILED") << '\n';
    }
    run.report = rep.str();
    emit(options.out_dir, "gamma_report.txt", run.report, run.files);
    return run;
}

CarRun run_car(const ConfigDocument& doc, const RunOptions& options) {
    const CarConfig cfg = parse_car_config(doc);
    CarRun run;
    run.config_hash = effective_config_hash(doc.root, options, "car");

    TimestampStreams streams;
    double acquisition = 0.0;
    const bool synth = cfg.synthesize && (options.synthesize || !cfg.timestamps_csv);
    if (options.synthesize && !cfg.synthesize) {
        throw ConfigError("--synthesize: the config has no 'synthesize' block");
    }
    if (synth) {
        streams = synthesize_timestamps(cfg.synthesize->model, cfg.synthesize->duration_s, options.seed,
                                        cfg.synthesize->options);
        acquisition = cfg.synthesize->duration_s;
        std::ostringstream ts;
        write_timestamps_csv(ts, streams, run.config_hash);
        emit(options.out_dir, "timestamps.csv", ts.str(), run.files);
        run.prediction = predict_rates(cfg.synthesize->model);
    } else if (cfg.timestamps_csv) {
        std::ifstream in(*cfg.timestamps_csv);
        if (!in) throw DataError("cannot open '" + cfg.timestamps_csv->string() + "'");
        try {
            streams = read_timestamps_csv(in);
        } catch (const DataError& e) {
            throw DataError(cfg.timestamps_csv->string() + ": " + e.what());
        }
        double first = std::numeric_limits<double>::infinity(), last = -first;
        for (const auto* v : {&streams.signal, &streams.idler}) {
            if (v->empty()) continue;
            first = std::min(first, v->front());
            last = std::max(last, v->back());
        }
        acquisition = last > first ? last - first : 0.0;
    } else {
        throw ConfigError("timestamps_csv: give a timestamp file or a 'synthesize' block");
    }
    if (streams.signal.empty() || streams.idler.empty()) {
        throw DataError("both signal and idler channels need at least one event");
    }

    run.histogram = build_histogram(streams.signal, streams.idler, cfg.bin_width_s, cfg.window_s, acquisition);
    run.peak_center_bin = cfg.peak_center_bin ? *cfg.peak_center_bin : find_peak_bin(run.histogram);
    run.car = car_from_histogram(run.histogram, run.peak_center_bin, cfg.guard_bins);

    std::ostringstream h;
    write_histogram_csv(h, run.histogram, run.config_hash);
    emit(options.out_dir, "histogram.csv", h.str(), run.files);
    if (options.svg) {
        std::vector<double> x(run.histogram.size()), y(run.histogram.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = run.histogram.bin_center(i) * 1e9;
            y[i] = static_cast<double>(run.histogram.counts[i]);
        }
        emit(options.out_dir, "histogram.svg",
             render_line_plot({{"coincidences", x, y}}, {"Coincidence histogram", "delay (ns)", "counts"}),
             run.files);
    }

    std::ostringstream rep;
    rep << "config_hash: " << run.config_hash << '\n';
    rep << "source: " << (synth ? "synthesized (seed " + std::to_string(options.seed) + ")" : "timestamp file")
        << '\n';
    rep << "signal_events: " << streams.signal.size() << '\n';
    rep << "idler_events: " << streams.idler.size() << '\n';
    rep << "acquisition_time_s: " << fmt("%.6g", acquisition) << '\n';
    rep << "bin_width_s: " << fmt("%.6g", cfg.bin_width_s) << '\n';
    rep << "window_s: " << fmt("%.6g", cfg.window_s) << '\n';
    rep << "bins: " << run.histogram.size() << '\n';
    rep << "peak_center_bin: " << run.peak_center_bin << '\n';
    rep << "peak_window_bins: " << run.car.peak_first << ".." << run.car.peak_last << '\n';
    rep << "guard_bins: " << cfg.guard_bins << '\n';
    rep << "accidental_bins: " << run.car.accidental_bins << '\n';
    rep << "peak_mean: " << fmt("%.6g", run.car.peak_mean) << '\n';
    rep << "accidental_mean: " << fmt("%.6g", run.car.accidental_mean) << '\n';
    rep << "car: " << fmt("%.6g", run.car.car) << '\n';
    rep << "car_sigma: " << fmt("%.6g", run.car.sigma) << '\n';
    if (run.prediction) {
        const double dev = run.car.sigma > 0.0 ? (run.car.car - run.prediction->car) / run.car.sigma : 0.0;
        rep << "predicted_singles_signal_hz: " << fmt("%.6g", run.prediction->singles_signal) << '\n';
        rep << "predicted_singles_idler_hz: " << fmt("%.6g", run.prediction->singles_idler) << '\n';
        rep << "predicted_car: " << fmt("%.6g", run.prediction->car) << '\n';
        rep << "deviation_sigma: " << fmt("%.3f", dev) << '\n';
    }
    run.report = rep.str();
    emit(options.out_dir, "car_report.txt", run.report, run.files);
    return run;
}

}  // namespace sfwm::cli
