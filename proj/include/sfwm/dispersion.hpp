#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sfwm {

/// Converts a vacuum wavelength (m) to angular frequency (rad/s).
double angular_frequency_from_wavelength(double lambda_vac_m);

/// Inverse of angular_frequency_from_wavelength.
double wavelength_from_angular_frequency(double omega_rad_s);

/// Even-order Taylor model of the propagation constant about omega_c.
///
/// beta_even[m-1] holds d^{2m}k/dw^{2m} at omega_c in s^{2m}/m. Odd orders
/// cancel in the SFWM mismatch and are not represented.
class DispersionModel {
public:
    DispersionModel(double omega_c, std::vector<double> beta_even);

    double omega_c() const { return omega_c_; }
    std::span<const double> beta_even() const { return beta_even_; }
    std::size_t max_order() const { return 2 * beta_even_.size(); }
    double beta(std::size_t order) const;

    /// Same coefficients taken about a different reference frequency.
    DispersionModel recentred(double omega_c) const { return {omega_c, beta_even_}; }

private:
    double omega_c_;
    std::vector<double> beta_even_;
};

/// Pump configuration: one frequency (degenerate) or two (non-degenerate).
class PumpConfig {
public:
    enum class Mode { degenerate, non_degenerate };

    static PumpConfig degenerate(double omega_p, double power_w);
    static PumpConfig non_degenerate(double omega_p1, double omega_p2, double power1_w,
                                     double power2_w);

    Mode mode() const { return mode_; }
    bool is_degenerate() const { return mode_ == Mode::degenerate; }

    double omega_p1() const { return omega1_; }
    double omega_p2() const { return omega2_; }
    double power1_w() const { return power1_; }
    double power2_w() const { return power2_; }

    /// For degenerate pumps: omega_p and power.
    double omega_p() const { return omega1_; }
    double power_w() const { return power1_; }

    double omega_c() const { return 0.5 * (omega1_ + omega2_); }
    double omega_d() const { return 0.5 * (omega1_ - omega2_); }

    /// Pump lines: 1 for degenerate, 2 for non-degenerate.
    std::size_t line_count() const { return is_degenerate() ? 1 : 2; }
    double line_omega(std::size_t line) const;
    double line_power(std::size_t line) const;

    /// Copy with replaced per-line powers (size must equal line_count()).
    PumpConfig with_line_powers(std::span<const double> powers_w) const;

private:
    PumpConfig(Mode mode, double w1, double w2, double p1, double p2);

    Mode mode_;
    double omega1_;
    double omega2_;
    double power1_;
    double power2_;
};

/// Throws ConfigError when the model's reference frequency is more than
/// 0.1 % away from the pump average frequency.
void check_alignment(const DispersionModel& model, const PumpConfig& pump);

/// Linear phase mismatch at signal/idler frequency omega.
double linear_mismatch(const DispersionModel& model, double omega, const PumpConfig& pump);

/// Linear phase mismatch at detuning (omega - omega_c). Exactly even in the
/// detuning and exactly zero at +-omega_d.
double linear_mismatch_at_detuning(const DispersionModel& model, double detuning,
                                   const PumpConfig& pump);

}  // namespace sfwm
