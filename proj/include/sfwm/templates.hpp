#pragma once

#include <string>
#include <vector>

#include "sfwm/circuit.hpp"

namespace sfwm {

/// Shipped default cross-sections. Dispersion coefficients are recorded with
/// their provenance in data/default_waveguides.json.
namespace defaults {

inline constexpr double kStripGamma = 223.3;   // 1/(m W) at 1552.5 nm
inline constexpr double kRidgeGamma = 93.5;    // 1/(m W) at 1552.5 nm
inline constexpr double kStripBeta2 = -6.0e-26;   // s^2/m, small anomalous
inline constexpr double kStripBeta4 = 0.0;        // s^4/m
inline constexpr double kRidgeBeta2 = 1.595e-24;  // s^2/m, large normal
inline constexpr double kRidgeBeta4 = 1.56e-53;   // s^4/m
inline constexpr double kRidgeNeff = 2.6;
inline constexpr double kStripNeff = 2.4;
inline constexpr double kPumpWavelength = 1552.5e-9;
inline constexpr double kPump1Wavelength = 1528e-9;
inline constexpr double kPump2Wavelength = 1582e-9;

WaveguideSpec strip(double length_m, double omega_c);
WaveguideSpec shallow_ridge(double length_m, double omega_c);
WaveguideSpec cross_section(WaveguideKind kind, double length_m, double omega_c);

/// 1 W degenerate pump at 1552.5 nm.
PumpConfig degenerate_pump();
/// 10 mW + 10 mW at 1528 nm / 1582 nm.
PumpConfig non_degenerate_pump();

}  // namespace defaults

/// A ready-to-run application circuit.
struct CircuitTemplate {
    std::string name;
    std::string description;
    CircuitGraph graph;
    PumpConfig pump;
    PropagationOptions options;
    SpectralGrid grid;
    double band_lo_detuning;  // rad/s relative to the pump average
    double band_hi_detuning;
    std::vector<std::string> designated;
    /// Segment id -> part name ("source", "umzi", "distribution", "analyzer").
    std::vector<std::pair<std::string, std::string>> groups;
    double ratio_threshold = 10.0;

    double band_lo() const { return pump.omega_c() + band_lo_detuning; }
    double band_hi() const { return pump.omega_c() + band_hi_detuning; }
};

/// Time-bin source: UMZI of shallow-ridge arms feeding a 5 mm strip.
CircuitTemplate app1_timebin();

/// Path-entanglement chip: strip sources in two MZIs, 7 mm distribution
/// waveguides and a two-MZI analyzer, all other guides shallow-ridge.
CircuitTemplate app2_path();

CircuitTemplate circuit_template(const std::string& name);

/// Same template with every segment converted to the strip cross-section.
CircuitTemplate all_strip_variant(const CircuitTemplate& base);

/// Inter-pulse delay between the first and last pump pulse entering a segment.
double inter_pulse_delay(const std::vector<SegmentPumpState>& states, const std::string& segment);

}  // namespace sfwm
