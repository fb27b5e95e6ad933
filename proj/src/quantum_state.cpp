#include "sfwm/quantum_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sfwm/errors.hpp"

namespace sfwm {

namespace {

constexpr std::array<const char*, 4> kRailBasis = {"A1A2", "A1B2", "B1A2", "B1B2"};

}  // namespace

double TwoModeState::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

cplx TwoModeState::amplitude(const std::string& ket) const {
    const auto it = std::find(basis.begin(), basis.end(), ket);
    if (it == basis.end()) return {0.0, 0.0};
    return amplitudes[static_cast<std::size_t>(it - basis.begin())];
}

TwoModeState time_bin_state(double alpha) {
    const double r = std::numbers::sqrt2 / 2.0;
    return {{"0,0", "1,1"}, {cplx(r, 0.0), std::polar(r, 2.0 * alpha)}};
}

TwoModeState mzi_source_state(double theta) {
    // 1 + e^{2i theta} = 2 cos(theta) e^{i theta}; 1 - e^{2i theta} = -2i sin(theta) e^{i theta}.
    const cplx phase = std::polar(1.0, theta);
    const cplx bunch = std::cos(theta) * phase / std::numbers::sqrt2;
    const cplx anti = std::sin(theta) * phase;
    return {{"2,0", "1,1", "0,2"}, {-bunch, anti, bunch}};
}

TwoModeState path_entangled_state(double alpha) {
    const double r = std::numbers::sqrt2 / 2.0;
    return {{"A1A2", "B1B2"}, {cplx(r, 0.0), std::polar(r, 2.0 * alpha)}};
}

std::array<cplx, 4> rail_vector(const TwoModeState& state) {
    for (const auto& ket : state.basis) {
        if (std::find(kRailBasis.begin(), kRailBasis.end(), ket) == kRailBasis.end()) {
            throw DomainError("state has ket '" + ket + "' outside the two-rail basis");
        }
    }
    std::array<cplx, 4> v{};
    for (std::size_t k = 0; k < 4; ++k) v[k] = state.amplitude(kRailBasis[k]);
    return v;
}

TwoModeState rail_state(const std::array<cplx, 4>& amplitudes) {
    TwoModeState s;
    for (std::size_t k = 0; k < 4; ++k) {
        s.basis.emplace_back(kRailBasis[k]);
        s.amplitudes.push_back(amplitudes[k]);
    }
    return s;
}

std::array<std::array<cplx, 2>, 2> rail_unitary(const RailRotation& r) {
    const cplx z0 = std::polar(1.0, -0.5 * r.rz);
    const cplx z1 = std::polar(1.0, 0.5 * r.rz);
    const double c = std::cos(0.5 * r.ry);
    const double s = std::sin(0.5 * r.ry);
    return {{{c * z0, -s * z1}, {s * z0, c * z1}}};
}

double analyzer_coincidence(const TwoModeState& state, double rz_s, double ry_s, double rz_i,
                            double ry_i) {
    const auto v = rail_vector(state);
    const auto us = rail_unitary({rz_s, ry_s});
    const auto ui = rail_unitary({rz_i, ry_i});
    // <0_s 0_i| (Us x Ui) |psi>, index = 2*signal_rail + idler_rail
    cplx amp = 0.0;
    for (int s = 0; s < 2; ++s) {
        for (int i = 0; i < 2; ++i) amp += us[0][s] * ui[0][i] * v[2 * s + i];
    }
    return std::norm(amp);
}

TwoModeState with_pair_phase(const TwoModeState& state, double alpha) {
    TwoModeState out = state;
    for (std::size_t k = 0; k < out.basis.size(); ++k) {
        if (out.basis[k] == "B1B2") out.amplitudes[k] *= std::polar(1.0, 2.0 * alpha);
    }
    return out;
}

double fringe_visibility(const TwoModeState& state, const RailRotation& signal,
                         const RailRotation& idler, int n_samples) {
    if (n_samples < 2) throw DomainError("fringe_visibility needs at least 2 samples");
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int k = 0; k < n_samples; ++k) {
        const double alpha = 2.0 * std::numbers::pi * k / n_samples;
        const double p = analyzer_coincidence(with_pair_phase(state, alpha), signal.rz, signal.ry,
                                              idler.rz, idler.ry);
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    if (hi + lo == 0.0) return 0.0;
    return (hi - lo) / (hi + lo);
}

}  // namespace sfwm
