#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sfwm/dispersion.hpp"

namespace sfwm {

enum class WaveguideKind { strip, shallow_ridge, custom };

const char* to_string(WaveguideKind kind);
WaveguideKind waveguide_kind_from_string(const std::string& name);

struct WaveguideSpec {
    WaveguideKind kind = WaveguideKind::custom;
    double length_m = 0.0;
    double gamma = 0.0;  // 1/(m W)
    DispersionModel dispersion;
    double attenuation_db_per_cm = 0.0;

    void validate() const;

    /// Same cross-section at a different length.
    WaveguideSpec with_length(double length) const;
};

/// Uniform frequency samples, exactly symmetric about their centre.
class SpectralGrid {
public:
    SpectralGrid(double omega_min, double omega_max, std::size_t n_points = 4096);

    static SpectralGrid centred(double omega_centre, double half_span, std::size_t n_points = 4096);

    double omega_min() const { return centre_ - half_span_; }
    double omega_max() const { return centre_ + half_span_; }
    double centre() const { return centre_; }
    double half_span() const { return half_span_; }
    std::size_t size() const { return n_; }

    /// Offset of sample i from the grid centre; detuning(i) == -detuning(n-1-i) exactly.
    double detuning(std::size_t i) const;
    double omega(std::size_t i) const { return centre_ + detuning(i); }

private:
    double centre_;
    double half_span_;
    std::size_t n_;
};

struct BiphotonSpectrum {
    SpectralGrid grid;
    std::vector<double> flux_density;  // photons / (s Hz)
    std::string label;
};

/// Power-dependent mismatch: gamma(P1 + P2) or 2 gamma P.
double nonlinear_mismatch(double gamma, const PumpConfig& pump);

/// 4 gamma^2 P1 P2 (non-degenerate) or gamma^2 P^2 (degenerate).
double gain_power_term(double gamma, const PumpConfig& pump);

/// Parametric gain for a given power term, total mismatch and length.
///
/// Real continuation of power_term / g^2 * sinh^2(g L), g^2 = power_term - (dk/2)^2:
/// the sinh branch for g^2 > 0, the sin branch for g^2 < 0, power_term * L^2 at g^2 = 0.
double gain_from_mismatch(double power_term, double delta_k, double length_m);

/// Same as gain_from_mismatch, with the power term formed from gamma and the
/// pump in extended precision.
double gain_at_mismatch(double gamma, const PumpConfig& pump, double delta_k, double length_m);

/// Gain at signal frequency omega.
double parametric_gain(const WaveguideSpec& spec, const PumpConfig& pump, double omega);

/// Gain at a detuning from the pump average frequency.
double parametric_gain_at_detuning(const WaveguideSpec& spec, const PumpConfig& pump,
                                   double detuning);

/// Total mismatch dk_NL + dk_L at a detuning from the pump average frequency.
double total_mismatch_at_detuning(const WaveguideSpec& spec, const PumpConfig& pump,
                                  double detuning);

BiphotonSpectrum biphoton_spectrum(const WaveguideSpec& spec, const PumpConfig& pump,
                                   const SpectralGrid& grid, std::string label = {});

/// Total mismatch sampled on the grid (rad/m).
std::vector<double> mismatch_spectrum(const WaveguideSpec& spec, const PumpConfig& pump,
                                      const SpectralGrid& grid);

/// Photon flux (1/s) in [omega_lo, omega_hi], trapezoidal in Hz measure, times transmission.
double band_flux(const BiphotonSpectrum& spectrum, double omega_lo, double omega_hi,
                 double transmission = 1.0);

/// Largest detuning above the grid centre at which the flux is still at half maximum,
/// linearly interpolated between samples (rad/s).
double half_max_half_width(const BiphotonSpectrum& spectrum);

}  // namespace sfwm
