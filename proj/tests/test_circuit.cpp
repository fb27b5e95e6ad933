#include "doctest.h"

#include <cmath>
#include <numbers>

#include "sfwm/circuit.hpp"
#include "sfwm/constants.hpp"
#include "sfwm/errors.hpp"
#include "sfwm/templates.hpp"

using namespace sfwm;

namespace {

constexpr double kTHz = 2.0 * std::numbers::pi * 1e12;

CircuitNode port(const std::string& id, bool input, bool detect = false) {
    return {id, PortParams{input, detect}};
}

CircuitNode segment(const std::string& id, double length, double omega_c, double n_eff = 2.6) {
    return {id, SegmentParams{defaults::shallow_ridge(length, omega_c), n_eff, PairTransmission::single}};
}

const SegmentPumpState& state_of(const std::vector<SegmentPumpState>& states, const std::string& id) {
    for (const auto& s : states) {
        if (s.segment_id == id) return s;
    }
    FAIL("missing segment " << id);
    return states.front();
}

// in -> bs(ratio) -> {seg_a -> det_a, seg_b -> det_b}
CircuitGraph split_circuit(double ratio, double omega_c) {
    CircuitGraph g;
    g.add_node(port("in", true));
    g.add_node({"bs", SplitterParams{ratio}});
    g.add_node(segment("seg_a", 2e-3, omega_c));
    g.add_node(segment("seg_b", 3e-3, omega_c));
    g.add_node(port("det_a", false, true));
    g.add_node(port("det_b", false, true));
    g.connect("in", "bs");
    g.connect("bs", "seg_a", 0);
    g.connect("bs", "seg_b", 1);
    g.connect("seg_a", "det_a");
    g.connect("seg_b", "det_b");
    return g;
}

}  // namespace

TEST_CASE("identity circuit keeps the input power") {
    const auto pump = defaults::degenerate_pump();
    CircuitGraph g;
    g.add_node(port("in", true));
    g.add_node(segment("wg", 5e-3, pump.omega_c()));
    g.add_node(port("out", false, true));
    g.connect("in", "wg");
    g.connect("wg", "out");
    const PropagationOptions opt{{"in"}};
    const auto states = propagate_pump(g, pump, opt);
    REQUIRE(states.size() == 1);
    CHECK(states[0].peak_power_w[0] == pump.power_w());
    CHECK(output_port_powers(g, pump, opt).at("out")[0] == pump.power_w());
    CHECK(output_transmission(g, "wg", pump.omega_c(), false) == 1.0);
}

TEST_CASE("lossless splitters conserve power") {
    const auto pump = defaults::non_degenerate_pump();
    for (double r : {0.0, 0.1, 0.5, 0.73, 1.0}) {
        const auto g = split_circuit(r, pump.omega_c());
        const auto out = output_port_powers(g, pump, {{"in"}});
        for (std::size_t line = 0; line < 2; ++line) {
            const double total = out.at("det_a")[line] + out.at("det_b")[line];
            CHECK(std::abs(total - pump.line_power(line)) <= 1e-12 * pump.line_power(line));
        }
        const auto states = propagate_pump(g, pump, {{"in"}});
        CHECK(state_of(states, "seg_a").peak_power_w[0] == doctest::Approx(r * pump.power1_w()));
    }
}

TEST_CASE("segment delay and phase accumulate") {
    const auto pump = defaults::degenerate_pump();
    CircuitGraph g;
    g.add_node(port("in", true));
    g.add_node(segment("a", 4e-3, pump.omega_c(), 2.5));
    g.add_node({"ps", PhaseShifterParams{0.3}});
    g.add_node(segment("b", 1e-3, pump.omega_c()));
    g.add_node(port("out", false, true));
    g.connect("in", "a");
    g.connect("a", "ps");
    g.connect("ps", "b");
    g.connect("b", "out");
    PropagationOptions opt{{"in"}, PumpTiming::pulsed};
    const auto states = propagate_pump(g, pump, opt);
    const auto& b = state_of(states, "b");
    REQUIRE(b.pulses.size() == 1);
    CHECK(b.pulses[0].delay_s == doctest::Approx(2.5 * 4e-3 / constants::kSpeedOfLight).epsilon(1e-12));
    const double phase = std::remainder(2.5 * pump.omega_c() / constants::kSpeedOfLight * 4e-3 + 0.3,
                                        2 * std::numbers::pi);
    CHECK(std::abs(std::remainder(b.pulses[0].phase_rad - phase, 2 * std::numbers::pi)) < 1e-6);
}

TEST_CASE("time-bin template power budget and contributions") {
    const auto t = app1_timebin();
    const auto states = propagate_pump(t.graph, t.pump, t.options);
    CHECK(state_of(states, "umzi_long").peak_power_w[0] == doctest::Approx(0.5));
    CHECK(state_of(states, "umzi_short").peak_power_w[0] == doctest::Approx(0.5));
    CHECK(state_of(states, "strip").peak_power_w[0] == doctest::Approx(0.25));
    CHECK(state_of(states, "strip").pulses.size() == 2);

    const auto contributions = segment_contributions(t.graph, t.pump, t.grid, t.options);
    REQUIRE(contributions.size() == 3);
    for (const auto& c : contributions) {
        CHECK(c.transmission == doctest::Approx(c.segment_id == "strip" ? 1.0 : 0.5));
    }
    const double delay = inter_pulse_delay(states, "strip");
    CHECK(delay == doctest::Approx(11.5e-3 * 2.6 / constants::kSpeedOfLight).epsilon(1e-9));
    CHECK(std::abs(delay - 99.7e-12) < 0.5e-12);
}

TEST_CASE("template selection ratios") {
    SUBCASE("time-bin") {
        const auto t = app1_timebin();
        const auto c = segment_contributions(t.graph, t.pump, t.grid, t.options);
        CHECK(selection_ratio(c, t.band_lo(), t.band_hi(), t.designated) >= 10.0);
        const auto s = all_strip_variant(t);
        const auto cs = segment_contributions(s.graph, s.pump, s.grid, s.options);
        CHECK(selection_ratio(cs, s.band_lo(), s.band_hi(), s.designated) <= 2.0);
    }
    SUBCASE("path") {
        const auto t = app2_path();
        CHECK(t.pump.omega_d() / kTHz == doctest::Approx(3.3).epsilon(0.02));
        const auto c = segment_contributions(t.graph, t.pump, t.grid, t.options);
        CHECK(c.size() == 12);
        for (const auto& x : c) {
            CHECK(x.pump_power_w[0] == doctest::Approx(2.5e-3));
            CHECK(x.pump_power_w[1] == doctest::Approx(2.5e-3));
        }
        CHECK(selection_ratio(c, t.band_lo(), t.band_hi(), t.designated) >= 10.0);
        const auto s = all_strip_variant(t);
        const auto cs = segment_contributions(s.graph, s.pump, s.grid, s.options);
        CHECK(selection_ratio(cs, s.band_lo(), s.band_hi(), s.designated) < 10.0);
    }
}

TEST_CASE("selection ratio edge cases") {
    const auto t = app1_timebin();
    const auto c = segment_contributions(t.graph, t.pump, t.grid, t.options);
    CHECK(std::isinf(selection_ratio(c, t.band_lo(), t.band_hi(), {"strip", "umzi_long", "umzi_short"})));
    CHECK_THROWS_AS(selection_ratio({}, t.band_lo(), t.band_hi(), {"strip"}), UsageError);
    CHECK_THROWS_AS(selection_ratio(c, t.band_lo(), t.band_hi(), {}), UsageError);
    CHECK_THROWS_AS(selection_ratio(c, t.band_lo(), t.band_hi(), {"nope"}), UsageError);
}

TEST_CASE("zero pump power gives zero contributions") {
    auto t = app1_timebin();
    t.pump = t.pump.with_line_powers(std::vector<double>{0.0});
    for (const auto& c : segment_contributions(t.graph, t.pump, t.grid, t.options)) {
        for (double v : c.spectrum.flux_density) CHECK(v == 0.0);
    }
}

TEST_CASE("pair transmission squares the path factor") {
    auto t = app1_timebin();
    std::get<SegmentParams>(t.graph.node("umzi_long").params).pair_transmission = PairTransmission::pair;
    for (const auto& c : segment_contributions(t.graph, t.pump, t.grid, t.options)) {
        if (c.segment_id == "umzi_long") CHECK(c.transmission == doctest::Approx(0.25));
    }
}

TEST_CASE("topology validation") {
    const double wc = defaults::degenerate_pump().omega_c();
    SUBCASE("cycle") {
        CircuitGraph g;
        g.add_node(port("in", true));
        g.add_node({"bs", SplitterParams{}});
        g.add_node(segment("a", 1e-3, wc));
        g.add_node(segment("b", 1e-3, wc));
        g.connect("in", "bs", 0, 0);
        g.connect("bs", "a", 0);
        g.connect("a", "b");
        g.connect("b", "bs", 0, 1);
        CHECK_THROWS_AS(g.validate(), TopologyError);
    }
    SUBCASE("disconnected segment") {
        CircuitGraph g = split_circuit(0.5, wc);
        g.add_node(segment("orphan", 1e-3, wc));
        CHECK_THROWS_AS(g.validate(), TopologyError);
    }
    SUBCASE("unknown node") {
        CircuitGraph g = split_circuit(0.5, wc);
        g.connect("seg_a", "ghost");
        CHECK_THROWS_AS(g.validate(), TopologyError);
    }
    SUBCASE("duplicate id") {
        CircuitGraph g = split_circuit(0.5, wc);
        CHECK_THROWS_AS(g.add_node(port("in", true)), ConfigError);
    }
    SUBCASE("bad splitter ratio") {
        CircuitGraph g = split_circuit(1.5, wc);
        CHECK_THROWS_AS(g.validate(), ConfigError);
    }
    SUBCASE("valid") {
        CHECK_NOTHROW(split_circuit(0.5, wc).validate());
    }
}

TEST_CASE("grating coupler loss profile") {
    const CouplerParams c;
    CHECK(c.loss_db(1550e-9) == doctest::Approx(4.5));
    CHECK(c.loss_db(1575e-9) == doctest::Approx(7.5));
    CHECK(c.transmission(1550e-9) == doctest::Approx(std::pow(10.0, -0.45)));
}

TEST_CASE("all-segment replacement keeps lengths") {
    const auto t = app1_timebin();
    const auto g = with_all_segments(t.graph, defaults::strip(1.0, t.pump.omega_c()));
    for (const auto& id : g.segment_ids()) {
        const auto& s = std::get<SegmentParams>(g.node(id).params);
        CHECK(s.waveguide.kind == WaveguideKind::strip);
        CHECK(s.waveguide.length_m == std::get<SegmentParams>(t.graph.node(id).params).waveguide.length_m);
    }
}

TEST_CASE("unknown template name") {
    CHECK_THROWS_AS(circuit_template("app3"), ConfigError);
    CHECK(circuit_template("app2_path").name == "app2_path");
}
