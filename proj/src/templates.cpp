#include "sfwm/templates.hpp"

#include <algorithm>

#include "sfwm/constants.hpp"
#include "sfwm/errors.hpp"

namespace sfwm {

namespace defaults {

WaveguideSpec strip(double length_m, double omega_c) {
    WaveguideSpec s{WaveguideKind::strip, length_m, kStripGamma,
                    DispersionModel(omega_c, {kStripBeta2, kStripBeta4}), 0.0};
    s.validate();
    return s;
}

WaveguideSpec shallow_ridge(double length_m, double omega_c) {
    WaveguideSpec s{WaveguideKind::shallow_ridge, length_m, kRidgeGamma,
                    DispersionModel(omega_c, {kRidgeBeta2, kRidgeBeta4}), 0.0};
    s.validate();
    return s;
}

WaveguideSpec cross_section(WaveguideKind kind, double length_m, double omega_c) {
    switch (kind) {
        case WaveguideKind::strip: return strip(length_m, omega_c);
        case WaveguideKind::shallow_ridge: return shallow_ridge(length_m, omega_c);
        case WaveguideKind::custom: break;
    }
    throw ConfigError("custom waveguides have no default cross-section");
}

PumpConfig degenerate_pump() {
    return PumpConfig::degenerate(angular_frequency_from_wavelength(kPumpWavelength), 1.0);
}

PumpConfig non_degenerate_pump() {
    return PumpConfig::non_degenerate(angular_frequency_from_wavelength(kPump1Wavelength),
                                      angular_frequency_from_wavelength(kPump2Wavelength), 10e-3,
                                      10e-3);
}

}  // namespace defaults

namespace {

constexpr double kTHz = constants::kTwoPi * 1e12;  // rad/s per THz of detuning

CircuitNode port(const std::string& id, bool input, bool detect) {
    return {id, PortParams{input, detect}};
}

CircuitNode coupler(const std::string& id) {
    return {id, CouplerParams{}};
}

CircuitNode splitter(const std::string& id) {
    return {id, SplitterParams{0.5}};
}

CircuitNode phase(const std::string& id) {
    return {id, PhaseShifterParams{0.0}};
}

CircuitNode segment(const std::string& id, WaveguideSpec wg, double n_eff) {
    return {id, SegmentParams{std::move(wg), n_eff, PairTransmission::single}};
}

}  // namespace

CircuitTemplate app1_timebin() {
    const PumpConfig pump = defaults::degenerate_pump();
    const double wc = pump.omega_c();
    using defaults::kRidgeNeff;

    CircuitGraph g;
    g.add_node(port("in", true, false));
    g.add_node(coupler("gc_in"));
    g.add_node(splitter("bs1"));
    g.add_node(segment("umzi_long", defaults::shallow_ridge(12.5e-3, wc), kRidgeNeff));
    g.add_node(phase("ps_alpha"));
    g.add_node(segment("umzi_short", defaults::shallow_ridge(1.0e-3, wc), kRidgeNeff));
    g.add_node(splitter("bs2"));
    g.add_node(segment("strip", defaults::strip(5e-3, wc), defaults::kStripNeff));
    g.add_node(coupler("gc_out"));
    g.add_node(port("det", false, true));
    g.add_node(port("dump", false, false));

    g.connect("in", "gc_in");
    g.connect("gc_in", "bs1");
    g.connect("bs1", "umzi_long", 0, 0);
    g.connect("bs1", "ps_alpha", 1, 0);
    g.connect("ps_alpha", "umzi_short");
    g.connect("umzi_long", "bs2", 0, 0);
    g.connect("umzi_short", "bs2", 0, 1);
    g.connect("bs2", "strip", 0, 0);
    g.connect("bs2", "dump", 1, 0);
    g.connect("strip", "gc_out");
    g.connect("gc_out", "det");

    PropagationOptions opt;
    opt.input_ports = {"in"};
    opt.timing = PumpTiming::pulsed;
    opt.pulse_resolution_s = 1e-12;

    CircuitTemplate t{"app1_timebin",
                      "time-bin entanglement: ridge UMZI (dL = 11.5 mm) + 5 mm strip, 1 W "
                      "degenerate pump at 1552.5 nm",
                      std::move(g),
                      pump,
                      opt,
                      SpectralGrid::centred(wc, 8.0 * kTHz, 4096),
                      2.5 * kTHz,
                      5.0 * kTHz,
                      {"strip"},
                      {{"strip", "source"}, {"umzi_long", "umzi"}, {"umzi_short", "umzi"}}};
    return t;
}

CircuitTemplate app2_path() {
    const PumpConfig pump = defaults::non_degenerate_pump();
    const double wc = pump.omega_c();
    using defaults::kRidgeNeff;
    using defaults::kStripNeff;

    CircuitGraph g;
    g.add_node(port("in1", true, false));
    g.add_node(port("in2", true, false));
    g.add_node(coupler("gc_in1"));
    g.add_node(coupler("gc_in2"));
    g.add_node(splitter("bs_combine"));
    g.add_node(phase("ps1"));
    for (const std::string m : {"A", "B"}) {
        g.add_node(splitter("bs" + m + "_in"));
        g.add_node(segment("src_" + m + "1", defaults::strip(5e-3, wc), kStripNeff));
        g.add_node(phase("ps2_" + m));
        g.add_node(segment("src_" + m + "2", defaults::strip(5e-3, wc), kStripNeff));
        g.add_node(splitter("bs" + m + "_out"));
        g.add_node(segment("dist_" + m + "1", defaults::shallow_ridge(7e-3, wc), kRidgeNeff));
        g.add_node(segment("dist_" + m + "2", defaults::shallow_ridge(7e-3, wc), kRidgeNeff));
    }
    // Analyzer S takes the "1" outputs of both MZIs, analyzer I the "2" outputs.
    for (const std::string a : {"S", "I"}) {
        g.add_node(phase("rz_" + a));
        g.add_node(splitter("bs" + a + "_in"));
        g.add_node(segment("ana_" + a + "_up", defaults::shallow_ridge(2e-3, wc), kRidgeNeff));
        g.add_node(phase("ry_" + a));
        g.add_node(segment("ana_" + a + "_low", defaults::shallow_ridge(2e-3, wc), kRidgeNeff));
        g.add_node(splitter("bs" + a + "_out"));
        for (const std::string o : {"0", "1"}) {
            g.add_node(coupler("gc_" + a + o));
            g.add_node(port("det_" + a + o, false, true));
        }
    }

    g.connect("in1", "gc_in1");
    g.connect("in2", "gc_in2");
    g.connect("gc_in1", "bs_combine", 0, 0);
    g.connect("gc_in2", "bs_combine", 0, 1);
    g.connect("bs_combine", "bsA_in", 0, 0);
    g.connect("bs_combine", "ps1", 1, 0);
    g.connect("ps1", "bsB_in", 0, 0);
    for (const std::string m : {"A", "B"}) {
        g.connect("bs" + m + "_in", "src_" + m + "1", 0, 0);
        g.connect("bs" + m + "_in", "ps2_" + m, 1, 0);
        g.connect("ps2_" + m, "src_" + m + "2");
        g.connect("src_" + m + "1", "bs" + m + "_out", 0, 0);
        g.connect("src_" + m + "2", "bs" + m + "_out", 0, 1);
        g.connect("bs" + m + "_out", "dist_" + m + "1", 0, 0);
        g.connect("bs" + m + "_out", "dist_" + m + "2", 1, 0);
    }
    g.connect("dist_A1", "bsS_in", 0, 0);
    g.connect("dist_B1", "rz_S", 0, 0);
    g.connect("rz_S", "bsS_in", 0, 1);
    g.connect("dist_A2", "bsI_in", 0, 0);
    g.connect("dist_B2", "rz_I", 0, 0);
    g.connect("rz_I", "bsI_in", 0, 1);
    for (const std::string a : {"S", "I"}) {
        g.connect("bs" + a + "_in", "ana_" + a + "_up", 0, 0);
        g.connect("bs" + a + "_in", "ry_" + a, 1, 0);
        g.connect("ry_" + a, "ana_" + a + "_low");
        g.connect("ana_" + a + "_up", "bs" + a + "_out", 0, 0);
        g.connect("ana_" + a + "_low", "bs" + a + "_out", 0, 1);
        g.connect("bs" + a + "_out", "gc_" + a + "0", 0, 0);
        g.connect("bs" + a + "_out", "gc_" + a + "1", 1, 0);
        g.connect("gc_" + a + "0", "det_" + a + "0");
        g.connect("gc_" + a + "1", "det_" + a + "1");
    }

    PropagationOptions opt;
    opt.input_ports = {"in1", "in2"};
    opt.timing = PumpTiming::cw;

    std::vector<std::pair<std::string, std::string>> groups;
    for (const std::string m : {"A", "B"}) {
        groups.emplace_back("src_" + m + "1", "source");
        groups.emplace_back("src_" + m + "2", "source");
    }
    for (const std::string m : {"A", "B"}) {
        groups.emplace_back("dist_" + m + "1", "distribution");
        groups.emplace_back("dist_" + m + "2", "distribution");
    }
    for (const std::string a : {"S", "I"}) {
        groups.emplace_back("ana_" + a + "_up", "analyzer");
        groups.emplace_back("ana_" + a + "_low", "analyzer");
    }

    CircuitTemplate t{"app2_path",
                      "path entanglement: strip sources in MZI A/B, 7 mm ridge distribution, "
                      "ridge analyzer MZIs; 10 mW + 10 mW CW pumps at 1528/1582 nm",
                      std::move(g),
                      pump,
                      opt,
                      SpectralGrid::centred(wc, 5.0 * kTHz, 4096),
                      -0.025 * kTHz,
                      0.025 * kTHz,
                      {"src_A1", "src_A2", "src_B1", "src_B2"},
                      std::move(groups)};
    return t;
}

CircuitTemplate circuit_template(const std::string& name) {
    if (name == "app1_timebin") return app1_timebin();
    if (name == "app2_path") return app2_path();
    throw ConfigError("unknown circuit template '" + name + "' (expected app1_timebin or app2_path)");
}

CircuitTemplate all_strip_variant(const CircuitTemplate& base) {
    CircuitTemplate t = base;
    t.name = base.name + "_all_strip";
    t.description = base.description + " [all segments strip]";
    t.graph = with_all_segments(base.graph, defaults::strip(1.0, base.pump.omega_c()));
    return t;
}

double inter_pulse_delay(const std::vector<SegmentPumpState>& states, const std::string& segment) {
    const auto it = std::find_if(states.begin(), states.end(),
                                 [&](const SegmentPumpState& s) { return s.segment_id == segment; });
    if (it == states.end()) throw UsageError("no pump state for segment '" + segment + "'");
    if (it->pulses.size() < 2) return 0.0;
    return it->pulses.back().delay_s - it->pulses.front().delay_s;
}

}  // namespace sfwm
