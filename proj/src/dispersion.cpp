#include "sfwm/dispersion.hpp"

#include <cmath>
#include <string>

#include "sfwm/constants.hpp"
#include "sfwm/errors.hpp"

namespace sfwm {

double angular_frequency_from_wavelength(double lambda_vac_m) {
    if (!(lambda_vac_m > 0.0) || !std::isfinite(lambda_vac_m)) {
        throw DomainError("wavelength must be positive, got " + std::to_string(lambda_vac_m));
    }
    return constants::kTwoPi * constants::kSpeedOfLight / lambda_vac_m;
}

double wavelength_from_angular_frequency(double omega_rad_s) {
    if (!(omega_rad_s > 0.0) || !std::isfinite(omega_rad_s)) {
        throw DomainError("angular frequency must be positive");
    }
    return constants::kTwoPi * constants::kSpeedOfLight / omega_rad_s;
}

DispersionModel::DispersionModel(double omega_c, std::vector<double> beta_even)
    : omega_c_(omega_c), beta_even_(std::move(beta_even)) {
    if (!(omega_c_ > 0.0)) throw ConfigError("dispersion model: omega_c must be positive");
    if (beta_even_.empty()) throw ConfigError("dispersion model: at least beta2 is required");
    for (double b : beta_even_) {
        if (!std::isfinite(b)) throw ConfigError("dispersion model: non-finite coefficient");
    }
}

double DispersionModel::beta(std::size_t order) const {
    if (order < 2 || order % 2 != 0) throw DomainError("only even dispersion orders exist");
    const std::size_t index = order / 2 - 1;
    return index < beta_even_.size() ? beta_even_[index] : 0.0;
}

PumpConfig::PumpConfig(Mode mode, double w1, double w2, double p1, double p2)
    : mode_(mode), omega1_(w1), omega2_(w2), power1_(p1), power2_(p2) {
    if (!(w1 > 0.0) || !(w2 > 0.0)) throw ConfigError("pump frequencies must be positive");
    if (!(p1 >= 0.0) || !(p2 >= 0.0)) throw ConfigError("pump powers must be non-negative");
}

PumpConfig PumpConfig::degenerate(double omega_p, double power_w) {
    return {Mode::degenerate, omega_p, omega_p, power_w, power_w};
}

PumpConfig PumpConfig::non_degenerate(double omega_p1, double omega_p2, double power1_w,
                                      double power2_w) {
    if (omega_p1 == omega_p2) {
        throw ConfigError("non-degenerate pump requires two distinct frequencies");
    }
    return {Mode::non_degenerate, omega_p1, omega_p2, power1_w, power2_w};
}

double PumpConfig::line_omega(std::size_t line) const {
    if (line >= line_count()) throw UsageError("pump line index out of range");
    return line == 0 ? omega1_ : omega2_;
}

double PumpConfig::line_power(std::size_t line) const {
    if (line >= line_count()) throw UsageError("pump line index out of range");
    return line == 0 ? power1_ : power2_;
}

PumpConfig PumpConfig::with_line_powers(std::span<const double> powers_w) const {
    if (powers_w.size() != line_count()) throw UsageError("pump line power count mismatch");
    if (is_degenerate()) return degenerate(omega1_, powers_w[0]);
    return non_degenerate(omega1_, omega2_, powers_w[0], powers_w[1]);
}

void check_alignment(const DispersionModel& model, const PumpConfig& pump) {
    const double rel = std::abs(model.omega_c() - pump.omega_c()) / pump.omega_c();
    if (rel > 1e-3) {
        throw ConfigError("dispersion reference frequency is misaligned with the pump average (" +
                          std::to_string(rel * 100.0) + " %)");
    }
}

namespace {

// Sum over m of 2*beta_2m/(2m)! * (x^{2m} - d^{2m}). The caller supplies
// x^2 - d^2 in factored form so that the pump frequencies are exact zeros;
// x^{2m} - d^{2m} = (x^2 - d^2) * (x^{2(m-1)} + x^{2(m-2)} d^2 + ... + d^{2(m-1)}).
double mismatch_series(std::span<const double> beta_even, double x, double d,
                       double x2_minus_d2) {
    const double x2 = x * x;
    const double d2 = d * d;
    double total = 0.0;
    double factorial = 1.0;
    double geometric = 1.0;
    double x_pow = 1.0;
    for (std::size_t k = 0; k < beta_even.size(); ++k) {
        const double m = static_cast<double>(k + 1);
        factorial *= (2.0 * m - 1.0) * (2.0 * m);
        if (k > 0) {
            x_pow *= x2;
            geometric = geometric * d2 + x_pow;
        }
        total += 2.0 * beta_even[k] / factorial * x2_minus_d2 * geometric;
    }
    return total;
}

}  // namespace

double linear_mismatch(const DispersionModel& model, double omega, const PumpConfig& pump) {
    check_alignment(model, pump);
    const double x2_minus_d2 = (omega - pump.omega_p1()) * (omega - pump.omega_p2());
    return mismatch_series(model.beta_even(), omega - pump.omega_c(), pump.omega_d(),
                           x2_minus_d2);
}

double linear_mismatch_at_detuning(const DispersionModel& model, double detuning,
                                   const PumpConfig& pump) {
    check_alignment(model, pump);
    const double d = pump.omega_d();
    return mismatch_series(model.beta_even(), detuning, d, (detuning - d) * (detuning + d));
}

}  // namespace sfwm
