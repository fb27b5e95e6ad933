#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "sfwm/circuit.hpp"
#include "sfwm/coincidence.hpp"
#include "sfwm/nonlinear_coefficient.hpp"
#include "sfwm/templates.hpp"

namespace sfwm::cli {

using json = nlohmann::json;

/// A parsed config document plus the directory relative paths resolve against.
struct ConfigDocument {
    json root;
    std::filesystem::path base_dir;
    std::filesystem::path source;
};

/// Environment variable holding ':'-separated directories searched for configs.
inline constexpr const char* kConfigPathEnv = "SFWM_SIM_CONFIG_PATH";

std::filesystem::path resolve_config_path(const std::filesystem::path& requested);
ConfigDocument load_config(const std::filesystem::path& path);
ConfigDocument parse_config_text(const std::string& text, const std::filesystem::path& base_dir = ".");

/// FNV-1a 64-bit hash of the canonical (sorted-key, compact) dump, as 16 hex digits.
std::string config_hash(const json& effective);

/// Strict reader for one JSON object: unit-suffixed quantities, unknown keys rejected.
class ObjectReader {
public:
    ObjectReader(const json& object, std::string path);

    bool has(const std::string& key) const;
    /// Quantity given under exactly one of base+suffix; result scaled to SI.
    std::optional<double> quantity(const std::string& base,
                                   std::initializer_list<std::pair<const char*, double>> units);
    double required_quantity(const std::string& base,
                             std::initializer_list<std::pair<const char*, double>> units);
    std::optional<double> number(const std::string& key);
    std::optional<std::string> string(const std::string& key);
    std::optional<bool> boolean(const std::string& key);
    std::optional<std::int64_t> integer(const std::string& key);
    const json* child(const std::string& key);
    std::string field(const std::string& key) const;
    [[noreturn]] void fail(const std::string& key, const std::string& message) const;

    /// Throws ConfigError naming the first key that was never read.
    void finish() const;

private:
    const json& object_;
    std::string path_;
    std::set<std::string> used_;
};

// Unit tables (multiplier to SI).
extern const std::initializer_list<std::pair<const char*, double>> kLengthUnits;
extern const std::initializer_list<std::pair<const char*, double>> kWavelengthUnits;

struct SpectrumConfig {
    PumpConfig pump;
    std::vector<std::pair<std::string, WaveguideSpec>> waveguides;
    SpectralGrid grid;
};

struct CircuitConfig {
    CircuitTemplate setup;
    bool all_strip = false;
};

struct GammaConfig {
    std::filesystem::path modefield_csv;
    double omega = 0.0;
    MaterialConstants material;
};

struct SynthesisConfig {
    RateModel model;
    double duration_s = 100.0;
    SynthesisOptions options;
};

struct CarConfig {
    std::optional<std::filesystem::path> timestamps_csv;
    double bin_width_s = 0.0;
    double window_s = 0.0;
    std::optional<std::size_t> peak_center_bin;
    std::size_t guard_bins = 0;
    std::optional<SynthesisConfig> synthesize;
};

PumpConfig parse_pump(const json& j, const std::string& path);
WaveguideSpec parse_waveguide(ObjectReader& r, double omega_c, const std::string& path);
SpectralGrid parse_grid(const json& j, const std::string& path, double omega_c,
                        double default_half_span, std::size_t default_points);

SpectrumConfig parse_spectrum_config(const ConfigDocument& doc);
CircuitConfig parse_circuit_config(const ConfigDocument& doc);
GammaConfig parse_gamma_config(const ConfigDocument& doc);
CarConfig parse_car_config(const ConfigDocument& doc);

/// Circuit description block ({"nodes", "edges", ...}) for a custom circuit.
CircuitGraph parse_circuit_graph(const json& j, const std::string& path, double omega_c,
                                 PropagationOptions& options);

}  // namespace sfwm::cli
