#include "sfwm/nonlinear_coefficient.hpp"

#include <algorithm>
#include <cmath>

#include "sfwm/errors.hpp"

namespace sfwm {

void ModeFieldGrid::validate() const {
    if (nx() < 2 || ny() < 2) throw DataError("mode field grid needs at least 2x2 samples");
    const auto increasing = [](const std::vector<double>& v) {
        return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
    };
    if (!increasing(x_coords) || !increasing(y_coords)) {
        throw DataError("mode field coordinates must be strictly increasing");
    }
    const std::size_t n = nx() * ny();
    if (e_field.size() != n || h_field.size() != n || core_mask.size() != n) {
        throw DataError("mode field sample count does not match the coordinate grid");
    }
}

void MaterialConstants::validate() const {
    if (!(n0 > 0.0) || !(n2 > 0.0) || !(z0 > 0.0) || !(c > 0.0)) {
        throw ConfigError("material constants must be strictly positive");
    }
}

std::vector<double> trapezoid_weights(const std::vector<double>& coords) {
    const std::size_t n = coords.size();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double half = 0.5 * (coords[i + 1] - coords[i]);
        w[i] += half;
        w[i + 1] += half;
    }
    return w;
}

GammaBreakdown effective_gamma_breakdown(const ModeFieldGrid& grid, double omega,
                                         const MaterialConstants& constants) {
    grid.validate();
    constants.validate();
    if (!(omega > 0.0)) throw DomainError("effective_gamma: omega must be positive");
    if (std::none_of(grid.core_mask.begin(), grid.core_mask.end(), [](bool b) { return b; })) {
        throw DataError("effective_gamma: core mask is empty");
    }

    const auto wx = trapezoid_weights(grid.x_coords);
    const auto wy = trapezoid_weights(grid.y_coords);

    double core_e4 = 0.0;
    double poynting = 0.0;
    for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
        double row_e4 = 0.0;
        double row_p = 0.0;
        for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
            const std::size_t k = grid.index(ix, iy);
            const Vec3c& e = grid.e_field[k];
            const Vec3c& h = grid.h_field[k];
            // z component of E x H*
            const std::complex<double> sz = e[0] * std::conj(h[1]) - e[1] * std::conj(h[0]);
            row_p += wx[ix] * sz.real();
            if (grid.core_mask[k]) {
                const double e2 = std::norm(e[0]) + std::norm(e[1]) + std::norm(e[2]);
                row_e4 += wx[ix] * e2 * e2;
            }
        }
        core_e4 += wy[iy] * row_e4;
        poynting += wy[iy] * row_p;
    }
    if (!(poynting > 0.0)) {
        throw DataError("effective_gamma: Poynting integral is not positive (degenerate mode)");
    }

    GammaBreakdown out;
    out.omega = omega;
    out.core_e4_integral = core_e4;
    out.poynting_integral = poynting;
    out.gamma = omega * constants.n2 / constants.c * constants.n0 * constants.n0 * core_e4 /
                (constants.z0 * constants.z0 * poynting * poynting);
    return out;
}

double effective_gamma(const ModeFieldGrid& grid, double omega,
                       const MaterialConstants& constants) {
    return effective_gamma_breakdown(grid, omega, constants).gamma;
}

}  // namespace sfwm
