#include "sfwm/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sfwm/constants.hpp"
#include "sfwm/errors.hpp"

namespace sfwm::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kTHzToRad = constants::kTwoPi * 1e12;

}  // namespace

const std::initializer_list<std::pair<const char*, double>> kLengthUnits = {
    {"_m", 1.0}, {"_mm", 1e-3}, {"_um", 1e-6}};
const std::initializer_list<std::pair<const char*, double>> kWavelengthUnits = {
    {"_m", 1.0}, {"_nm", 1e-9}, {"_um", 1e-6}};

namespace {

const std::initializer_list<std::pair<const char*, double>> kPowerUnits = {
    {"_w", 1.0}, {"_mw", 1e-3}};
const std::initializer_list<std::pair<const char*, double>> kDetuningUnits = {
    {"_thz", kTHzToRad}, {"_ghz", kTHzToRad * 1e-3}, {"_rad_s", 1.0}};
const std::initializer_list<std::pair<const char*, double>> kTimeUnits = {
    {"_s", 1.0}, {"_ns", 1e-9}, {"_ps", 1e-12}};
const std::initializer_list<std::pair<const char*, double>> kRateUnits = {
    {"_hz", 1.0}, {"_khz", 1e3}, {"_per_s", 1.0}};
const std::initializer_list<std::pair<const char*, double>> kGammaUnits = {
    {"_per_w_per_m", 1.0}, {"_per_w_per_km", 1e-3}};

// Unit suffixes for beta_{2m}: SI, ps^{2m}/m and ps^{2m}/km.
std::vector<std::pair<std::string, double>> beta_units(int order) {
    const double ps = std::pow(1e-12, order);
    const std::string o = std::to_string(order);
    return {{"_s" + o + "_per_m", 1.0}, {"_ps" + o + "_per_m", ps}, {"_ps" + o + "_per_km", ps * 1e-3}};
}

// Power accepts linear units or a _dbm suffix.
double required_power(ObjectReader& r, const std::string& base) {
    const auto linear = r.quantity(base, kPowerUnits);
    const std::string dbm_key = base + "_dbm";
    if (r.has(dbm_key)) {
        if (linear) r.fail(dbm_key, "conflicts with a linear power for the same field");
        return 1e-3 * std::pow(10.0, *r.number(dbm_key) / 10.0);
    }
    if (!linear) r.fail(base, "missing (expected " + base + "_w | " + base + "_mw | " + base + "_dbm)");
    if (!(*linear > 0.0)) r.fail(base, "must be positive");
    return *linear;
}

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

}  // namespace

fs::path resolve_config_path(const fs::path& requested) {
    if (fs::exists(requested)) return requested;
    if (requested.is_relative()) {
        if (const char* env = std::getenv(kConfigPathEnv)) {
            std::stringstream dirs(env);
            std::string dir;
            while (std::getline(dirs, dir, ':')) {
                if (dir.empty()) continue;
                const fs::path candidate = fs::path(dir) / requested;
                if (fs::exists(candidate)) return candidate;
            }
        }
    }
    throw ConfigError("config file '" + requested.string() + "' not found");
}

ConfigDocument parse_config_text(const std::string& text, const fs::path& base_dir) {
    ConfigDocument doc;
    doc.base_dir = base_dir;
    try {
        doc.root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error at line " +
                          std::to_string(line_of_offset(text, e.byte)) + ": " + e.what());
    }
    if (!doc.root.is_object()) throw ConfigError("config document must be a JSON object");
    return doc;
}

ConfigDocument load_config(const fs::path& path) {
    const fs::path resolved = resolve_config_path(path);
    std::ifstream in(resolved);
    if (!in) throw ConfigError("cannot read config file '" + resolved.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    ConfigDocument doc = parse_config_text(buf.str(), resolved.parent_path());
    doc.source = resolved;
    return doc;
}

std::string config_hash(const json& effective) {
    const std::string canonical = effective.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ObjectReader::ObjectReader(const json& object, std::string path)
    : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) throw ConfigError(path_ + ": expected an object");
}

std::string ObjectReader::field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
}

void ObjectReader::fail(const std::string& key, const std::string& message) const {
    throw ConfigError(field(key) + ": " + message);
}

bool ObjectReader::has(const std::string& key) const {
    return object_.contains(key);
}

std::optional<double> ObjectReader::number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    used_.insert(key);
    const json& v = object_.at(key);
    if (!v.is_number()) fail(key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(key, "must be finite");
    return d;
}

std::optional<std::string> ObjectReader::string(const std::string& key) {
    if (!has(key)) return std::nullopt;
    used_.insert(key);
    const json& v = object_.at(key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
}

std::optional<bool> ObjectReader::boolean(const std::string& key) {
    if (!has(key)) return std::nullopt;
    used_.insert(key);
    const json& v = object_.at(key);
    if (!v.is_boolean()) fail(key, "expected true or false");
    return v.get<bool>();
}

std::optional<std::int64_t> ObjectReader::integer(const std::string& key) {
    if (!has(key)) return std::nullopt;
    used_.insert(key);
    const json& v = object_.at(key);
    if (!v.is_number_integer()) fail(key, "expected an integer");
    return v.get<std::int64_t>();
}

const json* ObjectReader::child(const std::string& key) {
    if (!has(key)) return nullptr;
    used_.insert(key);
    return &object_.at(key);
}

std::optional<double> ObjectReader::quantity(
    const std::string& base, std::initializer_list<std::pair<const char*, double>> units) {
    std::optional<double> out;
    std::string found;
    for (const auto& [suffix, scale] : units) {
        const std::string key = base + suffix;
        if (!has(key)) continue;
        if (out) fail(key, "conflicts with " + found);
        out = *number(key) * scale;
        found = key;
    }
    return out;
}

double ObjectReader::required_quantity(
    const std::string& base, std::initializer_list<std::pair<const char*, double>> units) {
    const auto v = quantity(base, units);
    if (!v) {
        std::string options;
        for (const auto& u : units) options += (options.empty() ? "" : " | ") + base + u.first;
        fail(base, "missing (expected one of " + options + ")");
    }
    return *v;
}

void ObjectReader::finish() const {
    for (const auto& [key, value] : object_.items()) {
        if (!used_.count(key)) fail(key, "unknown key");
    }
}

PumpConfig parse_pump(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    const std::string mode = r.string("mode").value_or("degenerate");
    PumpConfig out = defaults::degenerate_pump();
    try {
        if (mode == "degenerate") {
            const double lambda = r.required_quantity("wavelength", kWavelengthUnits);
            const double power = required_power(r, "power");
            out = PumpConfig::degenerate(angular_frequency_from_wavelength(lambda), power);
        } else if (mode == "non-degenerate" || mode == "non_degenerate") {
            const double l1 = r.required_quantity("wavelength1", kWavelengthUnits);
            const double l2 = r.required_quantity("wavelength2", kWavelengthUnits);
            const double p1 = required_power(r, "power1");
            const double p2 = required_power(r, "power2");
            out = PumpConfig::non_degenerate(angular_frequency_from_wavelength(l1),
                                             angular_frequency_from_wavelength(l2), p1, p2);
        } else {
            r.fail("mode", "expected 'degenerate' or 'non-degenerate'");
        }
    } catch (const DomainError& e) {
        throw ConfigError(path + ": " + e.what());
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        if (what.rfind(path, 0) == 0) throw;
        throw ConfigError(path + ": " + what);
    }
    r.finish();
    return out;
}

namespace {

DispersionModel parse_dispersion(const json& j, const std::string& path, double omega_c) {
    ObjectReader r(j, path);
    double reference = omega_c;
    if (const auto lambda = r.quantity("lambda_c", kWavelengthUnits)) {
        reference = angular_frequency_from_wavelength(*lambda);
    }
    std::vector<double> beta;
    for (int order = 2; order <= 12; order += 2) {
        std::optional<double> value;
        std::string found;
        for (const auto& [suffix, scale] : beta_units(order)) {
            const std::string key = "beta" + std::to_string(order) + suffix;
            if (!r.has(key)) continue;
            if (value) r.fail(key, "conflicts with " + found);
            value = *r.number(key) * scale;
            found = key;
        }
        if (value) {
            beta.resize(static_cast<std::size_t>(order / 2), 0.0);
            beta.back() = *value;
        }
    }
    if (beta.empty()) r.fail("beta2", "at least a beta2 coefficient is required");
    r.finish();
    const double rel = std::abs(reference - omega_c) / omega_c;
    if (rel > 1e-3) {
        r.fail("lambda_c", "reference frequency differs from the pump average by more than 0.1 %");
    }
    // Coefficients are taken as valid at the pump average frequency.
    return DispersionModel(omega_c, std::move(beta));
}

}  // namespace

WaveguideSpec parse_waveguide(ObjectReader& r, double omega_c, const std::string& path) {
    const std::string kind_name = r.string("kind").value_or("custom");
    WaveguideKind kind;
    try {
        kind = waveguide_kind_from_string(kind_name);
    } catch (const ConfigError& e) {
        r.fail("kind", e.what());
    }
    const double length = r.required_quantity("length", kLengthUnits);
    if (!(length > 0.0)) r.fail("length", "must be positive");

    const auto gamma = r.quantity("gamma", kGammaUnits);
    const json* disp = r.child("dispersion");
    if (kind == WaveguideKind::custom && (!gamma || !disp)) {
        r.fail("kind", "custom waveguides need both gamma and dispersion");
    }
    WaveguideSpec spec = kind == WaveguideKind::custom
                             ? WaveguideSpec{kind, length, 0.0, DispersionModel(omega_c, {0.0}), 0.0}
                             : defaults::cross_section(kind, length, omega_c);
    if (gamma) {
        if (*gamma < 0.0) r.fail("gamma_per_w_per_m", "must be non-negative");
        spec.gamma = *gamma;
    }
    if (disp) spec.dispersion = parse_dispersion(*disp, r.field("dispersion"), omega_c);
    if (const auto att = r.number("attenuation_db_per_cm")) {
        if (*att < 0.0) r.fail("attenuation_db_per_cm", "must be non-negative");
        spec.attenuation_db_per_cm = *att;
    }
    (void)path;
    return spec;
}

SpectralGrid parse_grid(const json& j, const std::string& path, double omega_c,
                        double default_half_span, std::size_t default_points) {
    ObjectReader r(j, path);
    const double half = r.quantity("half_span", kDetuningUnits).value_or(default_half_span);
    const auto points = r.integer("points");
    r.finish();
    if (!(half > 0.0) || half >= omega_c) r.fail("half_span", "must be positive and below omega_c");
    if (points && *points < 2) r.fail("points", "at least 2 points are required");
    return SpectralGrid::centred(omega_c, half,
                                 points ? static_cast<std::size_t>(*points) : default_points);
}

SpectrumConfig parse_spectrum_config(const ConfigDocument& doc) {
    ObjectReader r(doc.root, "");
    (void)r.string("command");
    const json* pump_j = r.child("pump");
    const PumpConfig pump = pump_j ? parse_pump(*pump_j, "pump") : defaults::degenerate_pump();
    const double wc = pump.omega_c();

    SpectrumConfig cfg{pump, {}, SpectralGrid::centred(wc, 40.0 * kTHzToRad, 4096)};
    if (const json* g = r.child("grid")) cfg.grid = parse_grid(*g, "grid", wc, 40.0 * kTHzToRad, 4096);

    if (const json* wgs = r.child("waveguides")) {
        if (!wgs->is_array() || wgs->empty()) r.fail("waveguides", "expected a non-empty array");
        std::set<std::string> names;
        for (std::size_t i = 0; i < wgs->size(); ++i) {
            const std::string path = "waveguides[" + std::to_string(i) + "]";
            ObjectReader w((*wgs)[i], path);
            std::string name = w.string("name").value_or("wg" + std::to_string(i));
            if (!names.insert(name).second) w.fail("name", "duplicate waveguide name");
            WaveguideSpec spec = parse_waveguide(w, wc, path);
            w.finish();
            cfg.waveguides.emplace_back(std::move(name), std::move(spec));
        }
    } else {
        cfg.waveguides.emplace_back("strip_5mm", defaults::strip(5e-3, wc));
        for (int mm : {3, 8, 15}) {
            cfg.waveguides.emplace_back("ridge_" + std::to_string(mm) + "mm",
                                        defaults::shallow_ridge(mm * 1e-3, wc));
        }
    }
    r.finish();
    return cfg;
}

namespace {

CircuitNode parse_node(const json& j, const std::string& path, double omega_c) {
    ObjectReader r(j, path);
    const auto id = r.string("id");
    if (!id || id->empty()) r.fail("id", "missing node id");
    const auto kind = r.string("kind");
    if (!kind) r.fail("kind", "missing node kind");
    CircuitNode node{*id, PortParams{}};
    if (*kind == "port") {
        const std::string role = r.string("role").value_or("output");
        if (role != "input" && role != "detect" && role != "output") {
            r.fail("role", "expected input, detect or output");
        }
        node.params = PortParams{role == "input", role == "detect"};
    } else if (*kind == "grating_coupler") {
        CouplerParams c;
        if (auto v = r.quantity("center", kWavelengthUnits)) c.center_wavelength_m = *v;
        if (auto v = r.quantity("bandwidth", kWavelengthUnits)) c.bandwidth_3db_m = *v;
        if (auto v = r.number("min_loss_db")) c.min_loss_db = *v;
        node.params = c;
    } else if (*kind == "splitter") {
        SplitterParams s;
        if (auto v = r.number("ratio")) s.ratio = *v;
        if (!(s.ratio >= 0.0 && s.ratio <= 1.0)) r.fail("ratio", "must lie in [0, 1]");
        node.params = s;
    } else if (*kind == "phase_shifter") {
        node.params = PhaseShifterParams{r.number("phase_rad").value_or(0.0)};
    } else if (*kind == "segment") {
        const json* wg = r.child("waveguide");
        if (!wg) r.fail("waveguide", "segment needs a waveguide block");
        ObjectReader w(*wg, r.field("waveguide"));
        SegmentParams seg{parse_waveguide(w, omega_c, r.field("waveguide")), 2.6,
                          PairTransmission::single};
        w.finish();
        if (auto v = r.number("n_eff")) seg.n_eff = *v;
        if (!(seg.n_eff > 0.0)) r.fail("n_eff", "must be positive");
        const std::string pt = r.string("pair_transmission").value_or("single");
        if (pt == "pair") {
            seg.pair_transmission = PairTransmission::pair;
        } else if (pt != "single") {
            r.fail("pair_transmission", "expected 'single' or 'pair'");
        }
        node.params = std::move(seg);
    } else {
        r.fail("kind", "unknown node kind '" + *kind + "'");
    }
    r.finish();
    return node;
}

}  // namespace

CircuitGraph parse_circuit_graph(const json& j, const std::string& path, double omega_c,
                                 PropagationOptions& options) {
    ObjectReader r(j, path);
    CircuitGraph g;
    const json* nodes = r.child("nodes");
    if (!nodes || !nodes->is_array() || nodes->empty()) r.fail("nodes", "expected a non-empty array");
    for (std::size_t i = 0; i < nodes->size(); ++i) {
        const std::string p = r.field("nodes[" + std::to_string(i) + "]");
        CircuitNode node = parse_node((*nodes)[i], p, omega_c);
        try {
            g.add_node(std::move(node));
        } catch (const ConfigError& e) {
            throw ConfigError(p + ": " + e.what());
        }
    }
    const json* edges = r.child("edges");
    if (!edges || !edges->is_array()) r.fail("edges", "expected an array");
    for (std::size_t i = 0; i < edges->size(); ++i) {
        ObjectReader e((*edges)[i], r.field("edges[" + std::to_string(i) + "]"));
        const auto from = e.string("from");
        const auto to = e.string("to");
        if (!from) e.fail("from", "missing");
        if (!to) e.fail("to", "missing");
        const auto fp = e.integer("from_port").value_or(0);
        const auto tp = e.integer("to_port").value_or(0);
        e.finish();
        g.connect(*from, *to, static_cast<int>(fp), static_cast<int>(tp));
    }
    const std::string timing = r.string("timing").value_or("cw");
    if (timing == "pulsed") {
        options.timing = PumpTiming::pulsed;
    } else if (timing == "cw") {
        options.timing = PumpTiming::cw;
    } else {
        r.fail("timing", "expected 'cw' or 'pulsed'");
    }
    if (auto v = r.quantity("pulse_resolution", kTimeUnits)) options.pulse_resolution_s = *v;
    if (auto v = r.boolean("include_coupler_loss")) options.include_coupler_loss = *v;
    if (const json* ports = r.child("input_ports")) {
        if (!ports->is_array() || ports->empty()) r.fail("input_ports", "expected a non-empty array");
        options.input_ports.clear();
        for (const auto& p : *ports) {
            if (!p.is_string()) r.fail("input_ports", "expected strings");
            options.input_ports.push_back(p.get<std::string>());
        }
    } else {
        options.input_ports.clear();
        for (const auto& n : g.nodes()) {
            if (const auto* pp = std::get_if<PortParams>(&n.params); pp && pp->input) {
                options.input_ports.push_back(n.id);
            }
        }
    }
    r.finish();
    g.validate();
    return g;
}

CircuitConfig parse_circuit_config(const ConfigDocument& doc) {
    ObjectReader r(doc.root, "");
    (void)r.string("command");
    const auto tmpl = r.string("template");
    const json* circuit = r.child("circuit");
    if (tmpl && circuit) r.fail("circuit", "give either 'template' or 'circuit', not both");
    if (!tmpl && !circuit) r.fail("template", "missing ('template' name or 'circuit' block required)");

    const json* pump_j = r.child("pump");
    CircuitConfig cfg{tmpl ? circuit_template(*tmpl) : app1_timebin(), false};
    CircuitTemplate& t = cfg.setup;
    if (pump_j) {
        const PumpConfig pump = parse_pump(*pump_j, "pump");
        if (tmpl && std::abs(pump.omega_c() - t.pump.omega_c()) > 1e-3 * t.pump.omega_c()) {
            r.fail("pump", "template pumps may change power only, not frequency");
        }
        if (tmpl && pump.mode() != t.pump.mode()) r.fail("pump", "template pump mode cannot change");
        t.pump = pump;
    } else if (!tmpl) {
        r.fail("pump", "custom circuits need a pump block");
    }
    const double wc = t.pump.omega_c();
    if (circuit) {
        t.name = "custom";
        t.description = "custom circuit";
        t.options = PropagationOptions{};
        t.graph = parse_circuit_graph(*circuit, "circuit", wc, t.options);
        t.groups.clear();
        t.grid = SpectralGrid::centred(wc, 8.0 * kTHzToRad, 4096);
        t.designated.clear();
    }
    if (const json* g = r.child("grid")) {
        t.grid = parse_grid(*g, "grid", wc, t.grid.half_span(), t.grid.size());
    }
    if (const json* b = r.child("band")) {
        ObjectReader br(*b, "band");
        t.band_lo_detuning = br.required_quantity("detuning_lo", kDetuningUnits);
        t.band_hi_detuning = br.required_quantity("detuning_hi", kDetuningUnits);
        br.finish();
        if (!(t.band_lo_detuning < t.band_hi_detuning)) br.fail("detuning_hi", "must exceed detuning_lo");
    } else if (circuit) {
        r.fail("band", "custom circuits need a band block");
    }
    if (const json* d = r.child("designated")) {
        if (!d->is_array() || d->empty()) r.fail("designated", "expected a non-empty array");
        t.designated.clear();
        for (const auto& v : *d) {
            if (!v.is_string() || !t.graph.contains(v.get<std::string>())) {
                r.fail("designated", "entries must name circuit segments");
            }
            t.designated.push_back(v.get<std::string>());
        }
    } else if (circuit) {
        r.fail("designated", "custom circuits need designated segments");
    }
    if (auto v = r.number("ratio_threshold")) t.ratio_threshold = *v;
    if (auto v = r.boolean("all_strip")) cfg.all_strip = *v;
    r.finish();
    return cfg;
}

namespace {

fs::path existing_file(const ConfigDocument& doc, ObjectReader& r, const std::string& key) {
    const auto name = r.string(key);
    if (!name) r.fail(key, "missing file path");
    fs::path p(*name);
    if (p.is_relative()) p = doc.base_dir / p;
    if (!fs::exists(p)) r.fail(key, "file '" + p.string() + "' does not exist");
    return p;
}

}  // namespace

GammaConfig parse_gamma_config(const ConfigDocument& doc) {
    ObjectReader r(doc.root, "");
    (void)r.string("command");
    GammaConfig cfg;
    if (r.has("modefield_csv")) cfg.modefield_csv = existing_file(doc, r, "modefield_csv");
    const double lambda =
        r.quantity("wavelength", kWavelengthUnits).value_or(defaults::kPumpWavelength);
    cfg.omega = angular_frequency_from_wavelength(lambda);
    if (const json* m = r.child("material")) {
        ObjectReader mr(*m, "material");
        if (auto v = mr.number("n0")) cfg.material.n0 = *v;
        if (auto v = mr.number("n2_m2_per_w")) cfg.material.n2 = *v;
        if (auto v = mr.number("z0_ohm")) cfg.material.z0 = *v;
        mr.finish();
        try {
            cfg.material.validate();
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("material: ") + e.what());
        }
    }
    r.finish();
    return cfg;
}

namespace {

RateModel parse_rate_model(ObjectReader& r, double coincidence_window) {
    RateModel m;
    m.pair_rate = r.quantity("pair_rate", kRateUnits).value_or(0.0);
    m.efficiency_signal = r.number("efficiency_signal").value_or(1.0);
    m.efficiency_idler = r.number("efficiency_idler").value_or(1.0);
    m.dark_rate_signal = r.quantity("dark_rate_signal", kRateUnits).value_or(0.0);
    m.dark_rate_idler = r.quantity("dark_rate_idler", kRateUnits).value_or(0.0);
    m.coincidence_window_s = coincidence_window;
    const auto noise_s = r.quantity("noise_rate_signal", kRateUnits);
    const auto noise_i = r.quantity("noise_rate_idler", kRateUnits);
    const auto singles_s = r.quantity("singles_signal", kRateUnits);
    const auto singles_i = r.quantity("singles_idler", kRateUnits);
    if ((singles_s || singles_i) && (noise_s || noise_i)) {
        r.fail("singles_signal", "give either target singles or noise rates, not both");
    }
    if (singles_s || singles_i) {
        if (!singles_s || !singles_i) r.fail("singles_signal", "both target singles rates are needed");
        try {
            m = with_target_singles(m, *singles_s, *singles_i);
        } catch (const ConfigError& e) {
            r.fail("singles_signal", e.what());
        }
    } else {
        m.noise_rate_signal = noise_s.value_or(0.0);
        m.noise_rate_idler = noise_i.value_or(0.0);
    }
    try {
        m.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(r.field("") + " " + e.what());
    }
    return m;
}

}  // namespace

CarConfig parse_car_config(const ConfigDocument& doc) {
    ObjectReader r(doc.root, "");
    (void)r.string("command");
    CarConfig cfg;
    if (r.has("timestamps_csv")) cfg.timestamps_csv = existing_file(doc, r, "timestamps_csv");
    cfg.bin_width_s = r.required_quantity("bin_width", kTimeUnits);
    cfg.window_s = r.required_quantity("window", kTimeUnits);
    if (!(cfg.bin_width_s > 0.0)) r.fail("bin_width", "must be positive");
    if (!(cfg.window_s > 0.0)) r.fail("window", "must be positive");
    if (auto v = r.integer("peak_center_bin")) {
        if (*v < 0) r.fail("peak_center_bin", "must be non-negative");
        cfg.peak_center_bin = static_cast<std::size_t>(*v);
    }
    if (auto v = r.integer("guard_bins")) {
        if (*v < 0) r.fail("guard_bins", "must be non-negative");
        cfg.guard_bins = static_cast<std::size_t>(*v);
    }
    if (const json* s = r.child("synthesize")) {
        ObjectReader sr(*s, "synthesize");
        SynthesisConfig syn;
        syn.model = parse_rate_model(sr, static_cast<double>(kPeakWindowBins) * cfg.bin_width_s);
        syn.duration_s = sr.quantity("duration", kTimeUnits).value_or(100.0);
        if (!(syn.duration_s > 0.0)) sr.fail("duration_s", "must be positive");
        syn.options.jitter_sigma_s = sr.quantity("jitter", kTimeUnits).value_or(0.0);
        syn.options.idler_delay_s = sr.quantity("idler_delay", kTimeUnits).value_or(0.0);
        sr.finish();
        cfg.synthesize = syn;
    }
    r.finish();
    return cfg;
}

}  // namespace sfwm::cli
