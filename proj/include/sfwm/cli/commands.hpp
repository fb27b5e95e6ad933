#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sfwm/cli/config.hpp"
#include "sfwm/cli/csv_io.hpp"

namespace sfwm::cli {

/// Command-line overrides shared by all commands.
struct RunOptions {
    std::filesystem::path out_dir = ".";
    bool svg = false;
    std::uint64_t seed = 1;
    std::optional<std::size_t> grid_points;
    bool all_strip = false;
    std::optional<std::string> template_name;
    bool verify_scale = false;
    bool synthesize = false;
};

/// Hash of the config document together with the overrides that change results.
std::string effective_config_hash(const json& root, const RunOptions& options,
                                  const std::string& command);

struct SpectrumEntry {
    std::string name;
    WaveguideSpec spec;
    BiphotonSpectrum spectrum;
    double bandwidth_3db_thz = 0.0;  // full width at half maximum
};

struct SpectrumRun {
    std::string config_hash;
    PumpConfig pump;
    std::vector<SpectrumEntry> entries;
    std::vector<std::filesystem::path> files;
    std::string report;
};

struct CircuitRun {
    std::string config_hash;
    std::string template_name;
    std::vector<ContributionRow> rows;
    double ratio = 0.0;
    double threshold = 10.0;
    bool meets_threshold = false;
    /// Segment id -> delay between first and last pump pulse (pulsed pumps only).
    std::vector<std::pair<std::string, double>> inter_pulse_delays;
    std::vector<std::filesystem::path> files;
    std::string report;
};

struct GammaRun {
    std::string config_hash;
    GammaBreakdown breakdown;
    std::optional<double> scale_check_rel_diff;
    std::vector<std::filesystem::path> files;
    std::string report;
};

struct CarRun {
    std::string config_hash;
    CoincidenceHistogram histogram;
    std::size_t peak_center_bin = 0;
    CarResult car;
    std::optional<RatePrediction> prediction;
    std::vector<std::filesystem::path> files;
    std::string report;
};

SpectrumRun run_spectrum(const ConfigDocument& doc, const RunOptions& options);
/// doc may be null when options.template_name is set.
CircuitRun run_circuit(const ConfigDocument* doc, const RunOptions& options);
GammaRun run_gamma(const ConfigDocument& doc, const RunOptions& options);
CarRun run_car(const ConfigDocument& doc, const RunOptions& options);

}  // namespace sfwm::cli
