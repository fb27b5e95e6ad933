#include "sfwm/sfwm_engine.hpp"

#include <algorithm>
#include <cmath>

#include "sfwm/constants.hpp"
#include "sfwm/errors.hpp"

namespace sfwm {

const char* to_string(WaveguideKind kind) {
    switch (kind) {
        case WaveguideKind::strip: return "strip";
        case WaveguideKind::shallow_ridge: return "shallow-ridge";
        case WaveguideKind::custom: return "custom";
    }
    return "custom";
}

WaveguideKind waveguide_kind_from_string(const std::string& name) {
    if (name == "strip") return WaveguideKind::strip;
    if (name == "shallow-ridge" || name == "shallow_ridge" || name == "ridge") {
        return WaveguideKind::shallow_ridge;
    }
    if (name == "custom") return WaveguideKind::custom;
    throw ConfigError("unknown waveguide kind '" + name + "'");
}

void WaveguideSpec::validate() const {
    if (!(length_m > 0.0)) throw ConfigError("waveguide length must be positive");
    if (!(gamma >= 0.0)) throw ConfigError("waveguide gamma must be non-negative");
    if (!(attenuation_db_per_cm >= 0.0)) throw ConfigError("attenuation must be non-negative");
}

WaveguideSpec WaveguideSpec::with_length(double length) const {
    WaveguideSpec out = *this;
    out.length_m = length;
    out.validate();
    return out;
}

SpectralGrid::SpectralGrid(double omega_min, double omega_max, std::size_t n_points)
    : centre_(0.5 * (omega_min + omega_max)), half_span_(0.5 * (omega_max - omega_min)),
      n_(n_points) {
    if (!(omega_min < omega_max)) throw ConfigError("spectral grid: omega_min must be < omega_max");
    if (!(omega_min > 0.0)) throw ConfigError("spectral grid: frequencies must be positive");
    if (n_points < 2) throw ConfigError("spectral grid: at least 2 points are required");
}

SpectralGrid SpectralGrid::centred(double omega_centre, double half_span, std::size_t n_points) {
    SpectralGrid g(omega_centre - half_span, omega_centre + half_span, n_points);
    g.centre_ = omega_centre;
    g.half_span_ = half_span;
    return g;
}

double SpectralGrid::detuning(std::size_t i) const {
    // (2i - (n-1)) is an exact integer, so opposite samples are exact negatives.
    const double step_half = half_span_ / static_cast<double>(n_ - 1);
    const double k = 2.0 * static_cast<double>(i) - static_cast<double>(n_ - 1);
    return k * step_half;
}

double nonlinear_mismatch(double gamma, const PumpConfig& pump) {
    if (!(gamma >= 0.0)) throw DomainError("gamma must be non-negative");
    if (pump.is_degenerate()) return 2.0 * gamma * pump.power_w();
    return gamma * (pump.power1_w() + pump.power2_w());
}

double gain_power_term(double gamma, const PumpConfig& pump) {
    if (pump.is_degenerate()) {
        const double gp = gamma * pump.power_w();
        return gp * gp;
    }
    return 4.0 * gamma * gamma * pump.power1_w() * pump.power2_w();
}

namespace {

using real = long double;

// Extended precision keeps the sin branch accurate near its zeros.
real gain_kernel(real power_term, real delta_k, real len) {
    if (power_term == 0) return 0;
    const real half_dk = delta_k / 2;
    const real q2 = power_term - half_dk * half_dk;
    const real x = std::sqrt(std::abs(q2)) * len;
    real shape;  // sinh(x)/x or sin(x)/x
    if (x < 1e-6L) {
        const real sign = q2 >= 0 ? 1 : -1;
        shape = 1 + sign * x * x / 6;
    } else if (q2 > 0) {
        shape = std::sinh(x) / x;
    } else {
        shape = std::sin(x) / x;
    }
    return power_term * len * len * shape * shape;
}

}  // namespace

double gain_from_mismatch(double power_term, double delta_k, double length_m) {
    return static_cast<double>(gain_kernel(power_term, delta_k, length_m));
}

double gain_at_mismatch(double gamma, const PumpConfig& pump, double delta_k, double length_m) {
    const real g = gamma;
    real power_term;
    if (pump.is_degenerate()) {
        const real gp = g * static_cast<real>(pump.power_w());
        power_term = gp * gp;
    } else {
        power_term = 4 * g * g * static_cast<real>(pump.power1_w()) * static_cast<real>(pump.power2_w());
    }
    return static_cast<double>(gain_kernel(power_term, delta_k, length_m));
}

namespace {

struct EffectivePump {
    PumpConfig pump;
    double length;
    double output_factor;
};

// Attenuation: pump replaced by its path average over L, generated photons
// attenuated by half the segment loss.
EffectivePump effective_pump(const WaveguideSpec& spec, const PumpConfig& pump) {
    if (spec.attenuation_db_per_cm == 0.0) return {pump, spec.length_m, 1.0};
    const double loss_db = spec.attenuation_db_per_cm * spec.length_m * 100.0;
    const double alpha = loss_db / spec.length_m * std::log(10.0) / 10.0;  // 1/m
    const double l_eff = -std::expm1(-alpha * spec.length_m) / alpha;
    const double scale = l_eff / spec.length_m;
    std::vector<double> p(pump.line_count());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = pump.line_power(i) * scale;
    return {pump.with_line_powers(p), spec.length_m, std::pow(10.0, -loss_db / 20.0)};
}

}  // namespace

double total_mismatch_at_detuning(const WaveguideSpec& spec, const PumpConfig& pump,
                                  double detuning) {
    const EffectivePump eff = effective_pump(spec, pump);
    return nonlinear_mismatch(spec.gamma, eff.pump) +
           linear_mismatch_at_detuning(spec.dispersion, detuning, pump);
}

double parametric_gain_at_detuning(const WaveguideSpec& spec, const PumpConfig& pump,
                                   double detuning) {
    const EffectivePump eff = effective_pump(spec, pump);
    const double dk = nonlinear_mismatch(spec.gamma, eff.pump) +
                      linear_mismatch_at_detuning(spec.dispersion, detuning, pump);
    return eff.output_factor * gain_at_mismatch(spec.gamma, eff.pump, dk, eff.length);
}

double parametric_gain(const WaveguideSpec& spec, const PumpConfig& pump, double omega) {
    if (!(omega > 0.0)) throw DomainError("parametric_gain: omega must be positive");
    const EffectivePump eff = effective_pump(spec, pump);
    const double dk = nonlinear_mismatch(spec.gamma, eff.pump) +
                      linear_mismatch(spec.dispersion, omega, pump);
    return eff.output_factor * gain_at_mismatch(spec.gamma, eff.pump, dk, eff.length);
}

namespace {

// Detuning of grid sample i from the pump average; exact grid symmetry is
// preserved when the grid is centred on the pump.
template <typename Fn>
std::vector<double> sample_detuned(const SpectralGrid& grid, const PumpConfig& pump, Fn&& fn) {
    const double offset = grid.centre() - pump.omega_c();
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double det = offset == 0.0 ? grid.detuning(i) : grid.omega(i) - pump.omega_c();
        out[i] = fn(det);
    }
    return out;
}

}  // namespace

BiphotonSpectrum biphoton_spectrum(const WaveguideSpec& spec, const PumpConfig& pump,
                                   const SpectralGrid& grid, std::string label) {
    spec.validate();
    check_alignment(spec.dispersion, pump);
    auto flux = sample_detuned(grid, pump, [&](double det) {
        return parametric_gain_at_detuning(spec, pump, det);
    });
    return {grid, std::move(flux), std::move(label)};
}

std::vector<double> mismatch_spectrum(const WaveguideSpec& spec, const PumpConfig& pump,
                                      const SpectralGrid& grid) {
    spec.validate();
    check_alignment(spec.dispersion, pump);
    return sample_detuned(grid, pump, [&](double det) {
        return total_mismatch_at_detuning(spec, pump, det);
    });
}

double band_flux(const BiphotonSpectrum& spectrum, double omega_lo, double omega_hi,
                 double transmission) {
    if (!(transmission >= 0.0 && transmission <= 1.0)) {
        throw DomainError("band_flux: transmission must lie in [0, 1]");
    }
    if (!(omega_lo < omega_hi)) throw RangeError("band_flux: empty passband");
    const SpectralGrid& g = spectrum.grid;
    const double lo_edge = g.omega(0);
    const double hi_edge = g.omega(g.size() - 1);
    const double slack = 1e-12 * g.half_span();
    if (omega_lo < lo_edge - slack || omega_hi > hi_edge + slack) {
        throw RangeError("band_flux: passband lies outside the spectral grid");
    }
    omega_lo = std::max(omega_lo, lo_edge);
    omega_hi = std::min(omega_hi, hi_edge);
    if (transmission == 0.0) return 0.0;

    const auto& f = spectrum.flux_density;
    const auto value_at = [&](double w) {
        const double step = (hi_edge - lo_edge) / static_cast<double>(g.size() - 1);
        double pos = (w - lo_edge) / step;
        auto i = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0,
                                                     static_cast<double>(g.size() - 2)));
        const double t = std::clamp((w - g.omega(i)) / (g.omega(i + 1) - g.omega(i)), 0.0, 1.0);
        return f[i] + t * (f[i + 1] - f[i]);
    };

    // Piecewise-linear integral: partial end intervals plus interior samples.
    std::vector<std::pair<double, double>> pts;
    pts.emplace_back(omega_lo, value_at(omega_lo));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double w = g.omega(i);
        if (w > omega_lo && w < omega_hi) pts.emplace_back(w, f[i]);
    }
    pts.emplace_back(omega_hi, value_at(omega_hi));

    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        integral += 0.5 * (pts[i].second + pts[i + 1].second) * (pts[i + 1].first - pts[i].first);
    }
    return integral / constants::kTwoPi * transmission;
}

double half_max_half_width(const BiphotonSpectrum& spectrum) {
    const auto& f = spectrum.flux_density;
    const SpectralGrid& g = spectrum.grid;
    const double peak = *std::max_element(f.begin(), f.end());
    if (!(peak > 0.0)) throw DomainError("half_max_half_width: spectrum is identically zero");
    const double half = 0.5 * peak;
    std::size_t last = g.size();
    for (std::size_t i = g.size(); i-- > 0;) {
        if (g.detuning(i) < 0.0) break;
        if (f[i] >= half) {
            last = i;
            break;
        }
    }
    if (last == g.size()) return 0.0;
    if (last + 1 == g.size()) return g.detuning(last);
    const double t = (f[last] - half) / (f[last] - f[last + 1]);
    return g.detuning(last) + t * (g.detuning(last + 1) - g.detuning(last));
}

}  // namespace sfwm
