#include "sfwm/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>

#include "sfwm/constants.hpp"
#include "sfwm/errors.hpp"

namespace sfwm {

double CouplerParams::loss_db(double wavelength_m) const {
    const double x = (wavelength_m - center_wavelength_m) / (0.5 * bandwidth_3db_m);
    return min_loss_db + 3.0 * x * x;
}

double CouplerParams::transmission(double wavelength_m) const {
    return std::pow(10.0, -loss_db(wavelength_m) / 10.0);
}

const char* to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::grating_coupler: return "grating_coupler";
        case NodeKind::splitter: return "splitter";
        case NodeKind::phase_shifter: return "phase_shifter";
        case NodeKind::segment: return "segment";
        case NodeKind::port: return "port";
    }
    return "port";
}

NodeKind CircuitNode::kind() const {
    return static_cast<NodeKind>(params.index());
}

void CircuitGraph::add_node(CircuitNode node) {
    if (node.id.empty()) throw ConfigError("circuit node id must not be empty");
    if (contains(node.id)) throw ConfigError("duplicate circuit node id '" + node.id + "'");
    index_.emplace(node.id, nodes_.size());
    nodes_.push_back(std::move(node));
}

void CircuitGraph::connect(const std::string& from, const std::string& to, int from_port,
                           int to_port) {
    edges_.push_back({from, to, from_port, to_port});
}

const CircuitNode& CircuitGraph::node(const std::string& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) throw TopologyError("unknown circuit node '" + id + "'");
    return nodes_[it->second];
}

CircuitNode& CircuitGraph::node(const std::string& id) {
    const auto it = index_.find(id);
    if (it == index_.end()) throw TopologyError("unknown circuit node '" + id + "'");
    return nodes_[it->second];
}

std::vector<std::string> CircuitGraph::segment_ids() const {
    std::vector<std::string> ids;
    for (const auto& n : nodes_) {
        if (n.kind() == NodeKind::segment) ids.push_back(n.id);
    }
    return ids;
}

std::vector<const CircuitEdge*> CircuitGraph::out_edges(const std::string& id) const {
    std::vector<const CircuitEdge*> out;
    for (const auto& e : edges_) {
        if (e.from == id) out.push_back(&e);
    }
    return out;
}

namespace {

int port_count(NodeKind kind) {
    return kind == NodeKind::splitter ? 2 : 1;
}

}  // namespace

std::vector<std::string> CircuitGraph::topological_order() const {
    std::map<std::string, int> indegree;
    for (const auto& n : nodes_) indegree[n.id] = 0;
    for (const auto& e : edges_) ++indegree.at(e.to);
    std::deque<std::string> ready;
    for (const auto& n : nodes_) {
        if (indegree[n.id] == 0) ready.push_back(n.id);
    }
    std::vector<std::string> order;
    while (!ready.empty()) {
        const std::string id = ready.front();
        ready.pop_front();
        order.push_back(id);
        for (const auto& e : edges_) {
            if (e.from == id && --indegree[e.to] == 0) ready.push_back(e.to);
        }
    }
    if (order.size() != nodes_.size()) throw TopologyError("circuit graph contains a cycle");
    return order;
}

void CircuitGraph::validate() const {
    if (nodes_.empty()) throw TopologyError("circuit graph is empty");
    std::set<std::pair<std::string, int>> used_out;
    std::set<std::pair<std::string, int>> used_in;
    for (const auto& e : edges_) {
        if (!contains(e.from) || !contains(e.to)) {
            throw TopologyError("edge " + e.from + " -> " + e.to + " references an unknown node");
        }
        if (e.from == e.to) throw TopologyError("circuit graph contains a cycle at '" + e.from + "'");
        const NodeKind fk = node(e.from).kind();
        const NodeKind tk = node(e.to).kind();
        if (e.from_port < 0 || e.from_port >= port_count(fk) || e.to_port < 0 ||
            e.to_port >= port_count(tk)) {
            throw TopologyError("edge " + e.from + " -> " + e.to + " uses a non-existent port");
        }
        if (!used_out.insert({e.from, e.from_port}).second) {
            throw TopologyError("output port " + std::to_string(e.from_port) + " of '" + e.from +
                                "' is connected twice");
        }
        if (!used_in.insert({e.to, e.to_port}).second) {
            throw TopologyError("input port " + std::to_string(e.to_port) + " of '" + e.to +
                                "' is connected twice");
        }
        if (tk == NodeKind::port && std::get<PortParams>(node(e.to).params).input) {
            throw TopologyError("input port '" + e.to + "' cannot receive light");
        }
    }
    for (const auto& n : nodes_) {
        if (const auto* s = std::get_if<SplitterParams>(&n.params)) {
            if (!(s->ratio >= 0.0 && s->ratio <= 1.0)) {
                throw ConfigError("splitter '" + n.id + "' ratio must lie in [0, 1]");
            }
        } else if (const auto* seg = std::get_if<SegmentParams>(&n.params)) {
            seg->waveguide.validate();
            if (!(seg->n_eff > 0.0)) throw ConfigError("segment '" + n.id + "' n_eff must be positive");
        } else if (const auto* c = std::get_if<CouplerParams>(&n.params)) {
            if (!(c->bandwidth_3db_m > 0.0) || !(c->min_loss_db >= 0.0)) {
                throw ConfigError("grating coupler '" + n.id + "' has invalid loss parameters");
            }
        }
    }
    (void)topological_order();

    // Every segment must be reachable from some input port.
    std::set<std::string> reached;
    std::function<void(const std::string&)> visit = [&](const std::string& id) {
        if (!reached.insert(id).second) return;
        for (const auto* e : out_edges(id)) visit(e->to);
    };
    for (const auto& n : nodes_) {
        if (const auto* p = std::get_if<PortParams>(&n.params); p && p->input) visit(n.id);
    }
    for (const auto& n : nodes_) {
        if (n.kind() == NodeKind::segment && !reached.count(n.id)) {
            throw TopologyError("segment '" + n.id + "' is not connected to any input port");
        }
    }
}

namespace {

struct PathState {
    std::size_t line = 0;
    double power = 0.0;
    double delay = 0.0;
    double phase = 0.0;
};

using Arrivals = std::map<std::string, std::vector<PathState>>;

double wrap_phase(double phi) {
    double r = std::remainder(phi, constants::kTwoPi);
    if (r < 0.0) r += constants::kTwoPi;
    return r;
}

// Propagates every pump path through the graph; records what enters each node.
Arrivals trace_paths(const CircuitGraph& circuit, const PumpConfig& pump,
                     const PropagationOptions& options) {
    circuit.validate();
    const std::size_t lines = pump.line_count();
    if (options.input_ports.empty()) throw UsageError("propagate_pump: no input port given");
    if (options.input_ports.size() != 1 && options.input_ports.size() != lines) {
        throw UsageError("propagate_pump: need one input port or one per pump line");
    }

    // Arrivals keyed by node id, with the input port each path enters on.
    Arrivals arrivals;
    std::map<std::string, std::vector<int>> arrival_ports;
    for (std::size_t line = 0; line < lines; ++line) {
        const std::string& port =
            options.input_ports.size() == 1 ? options.input_ports[0] : options.input_ports[line];
        const CircuitNode& n = circuit.node(port);
        const auto* pp = std::get_if<PortParams>(&n.params);
        if (!pp || !pp->input) throw TopologyError("'" + port + "' is not an input port");
        arrivals[port].push_back({line, pump.line_power(line), 0.0, 0.0});
        arrival_ports[port].push_back(0);
    }

    const auto send = [&](const std::string& from, int from_port, const PathState& s) {
        for (const auto* e : circuit.out_edges(from)) {
            if (e->from_port != from_port) continue;
            arrivals[e->to].push_back(s);
            arrival_ports[e->to].push_back(e->to_port);
        }
    };

    for (const auto& id : circuit.topological_order()) {
        const auto it = arrivals.find(id);
        if (it == arrivals.end()) continue;
        const CircuitNode& n = circuit.node(id);
        const auto states = it->second;
        const auto ports = arrival_ports[id];
        for (std::size_t k = 0; k < states.size(); ++k) {
            PathState s = states[k];
            const double omega = pump.line_omega(s.line);
            switch (n.kind()) {
                case NodeKind::port:
                    send(id, 0, s);
                    break;
                case NodeKind::grating_coupler: {
                    if (options.include_coupler_loss) {
                        const auto& c = std::get<CouplerParams>(n.params);
                        s.power *= c.transmission(wavelength_from_angular_frequency(omega));
                    }
                    send(id, 0, s);
                    break;
                }
                case NodeKind::phase_shifter:
                    s.phase += std::get<PhaseShifterParams>(n.params).phase_rad;
                    send(id, 0, s);
                    break;
                case NodeKind::segment: {
                    const auto& seg = std::get<SegmentParams>(n.params);
                    const double len = seg.waveguide.length_m;
                    s.delay += seg.n_eff * len / constants::kSpeedOfLight;
                    s.phase += seg.n_eff * omega / constants::kSpeedOfLight * len;
                    s.power *= std::pow(10.0, -seg.waveguide.attenuation_db_per_cm * len * 10.0);
                    send(id, 0, s);
                    break;
                }
                case NodeKind::splitter: {
                    const double r = std::get<SplitterParams>(n.params).ratio;
                    const int in = ports[k];
                    PathState bar = s;
                    PathState cross = s;
                    bar.power *= r;
                    cross.power *= 1.0 - r;
                    cross.phase += 0.5 * std::numbers::pi;
                    send(id, in, bar);
                    send(id, 1 - in, cross);
                    break;
                }
            }
        }
    }
    return arrivals;
}

}  // namespace

std::vector<SegmentPumpState> propagate_pump(const CircuitGraph& circuit, const PumpConfig& pump,
                                             const PropagationOptions& options) {
    const Arrivals arrivals = trace_paths(circuit, pump, options);
    const std::size_t lines = pump.line_count();
    std::vector<SegmentPumpState> out;
    for (const auto& id : circuit.segment_ids()) {
        SegmentPumpState state;
        state.segment_id = id;
        state.peak_power_w.assign(lines, 0.0);
        auto paths = arrivals.count(id) ? arrivals.at(id) : std::vector<PathState>{};
        std::sort(paths.begin(), paths.end(),
                  [](const PathState& a, const PathState& b) { return a.delay < b.delay; });

        // Group paths into pulses; CW pumps form a single group.
        std::vector<std::vector<PathState>> groups;
        for (const auto& p : paths) {
            const bool new_group =
                groups.empty() || (options.timing == PumpTiming::pulsed &&
                                   p.delay - groups.back().front().delay > options.pulse_resolution_s);
            if (new_group) groups.emplace_back();
            groups.back().push_back(p);
        }
        for (const auto& g : groups) {
            PumpPulse pulse;
            pulse.delay_s = g.front().delay;
            pulse.line_power_w.assign(lines, 0.0);
            const PathState* strongest = &g.front();
            for (const auto& p : g) {
                pulse.line_power_w[p.line] += p.power;
                if (p.power > strongest->power) strongest = &p;
            }
            pulse.phase_rad = wrap_phase(strongest->phase);
            for (std::size_t l = 0; l < lines; ++l) {
                state.peak_power_w[l] = std::max(state.peak_power_w[l], pulse.line_power_w[l]);
            }
            state.pulses.push_back(std::move(pulse));
        }
        out.push_back(std::move(state));
    }
    return out;
}

std::map<std::string, std::vector<double>> output_port_powers(const CircuitGraph& circuit,
                                                              const PumpConfig& pump,
                                                              const PropagationOptions& options) {
    const Arrivals arrivals = trace_paths(circuit, pump, options);
    std::map<std::string, std::vector<double>> out;
    for (const auto& n : circuit.nodes()) {
        const auto* p = std::get_if<PortParams>(&n.params);
        if (!p || p->input) continue;
        std::vector<double> powers(pump.line_count(), 0.0);
        if (arrivals.count(n.id)) {
            for (const auto& s : arrivals.at(n.id)) powers[s.line] += s.power;
        }
        out.emplace(n.id, std::move(powers));
    }
    return out;
}

double output_transmission(const CircuitGraph& circuit, const std::string& segment_id,
                           double omega, bool include_coupler_loss) {
    const double wavelength = wavelength_from_angular_frequency(omega);
    std::function<double(const std::string&, int, double)> follow =
        [&](const std::string& id, int port, double t) -> double {
        double total = 0.0;
        for (const auto* e : circuit.out_edges(id)) {
            if (e->from_port != port) continue;
            const CircuitNode& n = circuit.node(e->to);
            switch (n.kind()) {
                case NodeKind::port:
                    if (std::get<PortParams>(n.params).detect) total += t;
                    break;
                case NodeKind::grating_coupler: {
                    double tc = t;
                    if (include_coupler_loss) {
                        tc *= std::get<CouplerParams>(n.params).transmission(wavelength);
                    }
                    total += follow(n.id, 0, tc);
                    break;
                }
                case NodeKind::phase_shifter:
                    total += follow(n.id, 0, t);
                    break;
                case NodeKind::segment: {
                    const auto& wg = std::get<SegmentParams>(n.params).waveguide;
                    total += follow(n.id, 0,
                                    t * std::pow(10.0, -wg.attenuation_db_per_cm * wg.length_m * 10.0));
                    break;
                }
                case NodeKind::splitter: {
                    const double r = std::get<SplitterParams>(n.params).ratio;
                    total += follow(n.id, e->to_port, t * r);
                    total += follow(n.id, 1 - e->to_port, t * (1.0 - r));
                    break;
                }
            }
        }
        return total;
    };
    const CircuitNode& seg = circuit.node(segment_id);
    if (seg.kind() != NodeKind::segment) throw UsageError("'" + segment_id + "' is not a segment");
    return follow(segment_id, 0, 1.0);
}

std::vector<SegmentContribution> segment_contributions(const CircuitGraph& circuit,
                                                       const PumpConfig& pump,
                                                       const SpectralGrid& grid,
                                                       const PropagationOptions& options) {
    const auto states = propagate_pump(circuit, pump, options);
    std::vector<SegmentContribution> out;
    out.reserve(states.size());
    for (const auto& st : states) {
        const auto& seg = std::get<SegmentParams>(circuit.node(st.segment_id).params);
        const PumpConfig local = pump.with_line_powers(st.peak_power_w);
        double t = std::clamp(
            output_transmission(circuit, st.segment_id, pump.omega_c(), options.include_coupler_loss),
            0.0, 1.0);
        if (seg.pair_transmission == PairTransmission::pair) t *= t;
        BiphotonSpectrum spec = biphoton_spectrum(seg.waveguide, local, grid, st.segment_id);
        for (double& v : spec.flux_density) v *= t;
        out.push_back({st.segment_id, st.peak_power_w, t, std::move(spec)});
    }
    return out;
}

double selection_ratio(const std::vector<SegmentContribution>& contributions, double omega_lo,
                       double omega_hi, const std::vector<std::string>& designated) {
    if (contributions.empty()) throw UsageError("selection_ratio: no contributions");
    if (designated.empty()) throw UsageError("selection_ratio: no designated segments");
    for (const auto& id : designated) {
        const bool known = std::any_of(contributions.begin(), contributions.end(),
                                       [&](const SegmentContribution& c) { return c.segment_id == id; });
        if (!known) throw UsageError("selection_ratio: unknown designated segment '" + id + "'");
    }
    double wanted = 0.0;
    double noise = 0.0;
    for (const auto& c : contributions) {
        const double f = band_flux(c.spectrum, omega_lo, omega_hi);
        const bool is_designated =
            std::find(designated.begin(), designated.end(), c.segment_id) != designated.end();
        (is_designated ? wanted : noise) += f;
    }
    if (noise == 0.0) return std::numeric_limits<double>::infinity();
    return wanted / noise;
}

CircuitGraph with_all_segments(const CircuitGraph& circuit, const WaveguideSpec& cross_section) {
    CircuitGraph out = circuit;
    for (const auto& id : out.segment_ids()) {
        auto& seg = std::get<SegmentParams>(out.node(id).params);
        const double len = seg.waveguide.length_m;
        seg.waveguide = cross_section;
        seg.waveguide.length_m = len;
    }
    return out;
}

}  // namespace sfwm
