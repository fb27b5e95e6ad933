#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sfwm/sfwm_engine.hpp"

namespace sfwm {

/// Grating coupler with a quadratic-in-dB loss profile around its centre.
struct CouplerParams {
    double center_wavelength_m = 1550e-9;
    double bandwidth_3db_m = 50e-9;
    double min_loss_db = 4.5;

    double loss_db(double wavelength_m) const;
    double transmission(double wavelength_m) const;
};

/// 2x2 lossless splitter: input port p sends `ratio` to output p and the rest across.
struct SplitterParams {
    double ratio = 0.5;
};

struct PhaseShifterParams {
    double phase_rad = 0.0;
};

/// How a path transmission t acts on generated pairs: t (single) or t^2 (pair).
enum class PairTransmission { single, pair };

struct SegmentParams {
    WaveguideSpec waveguide;
    double n_eff = 2.6;
    PairTransmission pair_transmission = PairTransmission::single;
};

struct PortParams {
    bool input = false;
    bool detect = false;
};

enum class NodeKind { grating_coupler, splitter, phase_shifter, segment, port };

const char* to_string(NodeKind kind);

struct CircuitNode {
    std::string id;
    std::variant<CouplerParams, SplitterParams, PhaseShifterParams, SegmentParams, PortParams>
        params;

    NodeKind kind() const;
};

struct CircuitEdge {
    std::string from;
    std::string to;
    int from_port = 0;
    int to_port = 0;
};

/// Directed acyclic circuit of couplers, splitters, phase shifters and waveguide segments.
class CircuitGraph {
public:
    void add_node(CircuitNode node);
    void connect(const std::string& from, const std::string& to, int from_port = 0,
                 int to_port = 0);

    const std::vector<CircuitNode>& nodes() const { return nodes_; }
    const std::vector<CircuitEdge>& edges() const { return edges_; }

    const CircuitNode& node(const std::string& id) const;
    CircuitNode& node(const std::string& id);
    bool contains(const std::string& id) const { return index_.count(id) != 0; }

    /// Segment node ids in declaration order.
    std::vector<std::string> segment_ids() const;

    /// Throws TopologyError for cycles, dangling edges, over-used ports or
    /// segments unreachable from an input port; ConfigError for bad parameters.
    void validate() const;

    /// Node ids in a topological order (validate() first).
    std::vector<std::string> topological_order() const;

    std::vector<const CircuitEdge*> out_edges(const std::string& id) const;

private:
    std::vector<CircuitNode> nodes_;
    std::vector<CircuitEdge> edges_;
    std::map<std::string, std::size_t> index_;
};

enum class PumpTiming { cw, pulsed };

struct PropagationOptions {
    /// Input port per pump line; a single entry is shared by all lines.
    std::vector<std::string> input_ports;
    PumpTiming timing = PumpTiming::cw;
    /// Pulsed pumps: paths whose delays differ by more than this are separate pulses.
    double pulse_resolution_s = 1e-12;
    bool include_coupler_loss = false;
};

/// One pump pulse (or the CW sum) present in a segment.
struct PumpPulse {
    double delay_s = 0.0;              // accumulated group delay at the segment input
    double phase_rad = 0.0;            // accumulated phase of the strongest path, wrapped
    std::vector<double> line_power_w;  // per pump line
};

struct SegmentPumpState {
    std::string segment_id;
    std::vector<PumpPulse> pulses;     // sorted by delay
    std::vector<double> peak_power_w;  // per pump line, max over pulses
};

/// Pump state entering every segment.
std::vector<SegmentPumpState> propagate_pump(const CircuitGraph& circuit, const PumpConfig& pump,
                                             const PropagationOptions& options);

/// Total power per pump line reaching each detect/output port.
std::map<std::string, std::vector<double>> output_port_powers(const CircuitGraph& circuit,
                                                              const PumpConfig& pump,
                                                              const PropagationOptions& options);

struct SegmentContribution {
    std::string segment_id;
    std::vector<double> pump_power_w;  // local peak power per pump line
    double transmission = 1.0;         // applied to the generated flux
    BiphotonSpectrum spectrum;         // already scaled by transmission
};

/// Transmission from a segment's output to all detect ports, at frequency omega.
double output_transmission(const CircuitGraph& circuit, const std::string& segment_id,
                           double omega, bool include_coupler_loss);

std::vector<SegmentContribution> segment_contributions(const CircuitGraph& circuit,
                                                       const PumpConfig& pump,
                                                       const SpectralGrid& grid,
                                                       const PropagationOptions& options);

/// Sum of designated band fluxes over the sum of all other band fluxes.
/// Returns +infinity when the denominator is exactly zero.
double selection_ratio(const std::vector<SegmentContribution>& contributions, double omega_lo,
                       double omega_hi, const std::vector<std::string>& designated);

/// Replace every segment's cross-section (kind, gamma, dispersion, attenuation),
/// keeping lengths and effective indices.
CircuitGraph with_all_segments(const CircuitGraph& circuit, const WaveguideSpec& cross_section);

}  // namespace sfwm
