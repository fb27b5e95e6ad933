#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sfwm/circuit.hpp"
#include "sfwm/coincidence.hpp"
#include "sfwm/nonlinear_coefficient.hpp"
#include "sfwm/sfwm_engine.hpp"

namespace sfwm::cli {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);
double parse_double(const std::string& text);

/// A CSV file: "# key: value" comment lines, one header row, data rows.
struct CsvTable {
    std::map<std::string, std::string> meta;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> row_lines;  // 1-based source line of each row

    /// Column index; DataError naming the column when absent.
    std::size_t column(const std::string& name) const;
    double number(std::size_t row, std::size_t col) const;
    const std::string& meta_value(const std::string& key) const;
};

CsvTable read_csv(std::istream& in, const std::string& source = "<stream>");
CsvTable read_csv_file(const std::filesystem::path& path);

/// Writes text to a file, creating parent directories; DataError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Spectrum: omega_rad_s,detuning_thz,flux_density_per_hz.
void write_spectrum_csv(std::ostream& out, const BiphotonSpectrum& spectrum,
                        const std::string& config_hash);
BiphotonSpectrum read_spectrum_csv(std::istream& in);

// Mismatch and gain: omega_rad_s,detuning_thz,delta_k_per_m,gain.
void write_mismatch_csv(std::ostream& out, const WaveguideSpec& spec, const PumpConfig& pump,
                        const SpectralGrid& grid, const std::string& config_hash);

// Histogram: bin_center_s,counts.
void write_histogram_csv(std::ostream& out, const CoincidenceHistogram& hist,
                         const std::string& config_hash);
CoincidenceHistogram read_histogram_csv(std::istream& in);

// Timestamps: channel,timestamp_s with channel in {signal, idler}.
void write_timestamps_csv(std::ostream& out, const TimestampStreams& streams,
                          const std::string& config_hash);
TimestampStreams read_timestamps_csv(std::istream& in);

// Mode fields, one row per grid point, x varying fastest.
void write_modefield_csv(std::ostream& out, const ModeFieldGrid& grid);
ModeFieldGrid read_modefield_csv(std::istream& in);

struct ContributionRow {
    std::string segment_id;
    std::string part;
    bool designated = false;
    double pump_power_w = 0.0;  // summed over pump lines
    double transmission = 1.0;
    double band_flux_per_s = 0.0;
};

// Summary: segment,part,designated,pump_power_w,transmission,band_flux_per_s.
void write_contribution_summary(std::ostream& out, const std::vector<ContributionRow>& rows,
                                double ratio, double band_lo_thz, double band_hi_thz,
                                const std::string& config_hash);

}  // namespace sfwm::cli
