#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace sfwm {

using Vec3c = std::array<std::complex<double>, 3>;

/// Sampled mode fields on a rectilinear (possibly graded) grid.
///
/// Samples are stored x-fastest: index(ix, iy) = iy * nx + ix.
struct ModeFieldGrid {
    std::vector<double> x_coords;  // m, strictly increasing
    std::vector<double> y_coords;  // m, strictly increasing
    std::vector<Vec3c> e_field;    // V/m
    std::vector<Vec3c> h_field;    // A/m
    std::vector<bool> core_mask;   // true inside R_core

    std::size_t nx() const { return x_coords.size(); }
    std::size_t ny() const { return y_coords.size(); }
    std::size_t index(std::size_t ix, std::size_t iy) const { return iy * nx() + ix; }

    /// Throws DataError when sizes or coordinate ordering are inconsistent.
    void validate() const;
};

struct MaterialConstants {
    double n0 = 3.48;
    double n2 = 4.5e-18;       // m^2/W
    double z0 = 376.730;       // Ohm
    double c = 2.99792458e8;   // m/s

    void validate() const;
};

/// Itemized result of the overlap quadrature.
struct GammaBreakdown {
    double gamma = 0.0;             // 1/(m W)
    double core_e4_integral = 0.0;  // integral of |E|^4 over the core, V^4/m^2
    double poynting_integral = 0.0; // integral of Re{E x H*} . z over the grid, W
    double omega = 0.0;
};

/// Effective nonlinear coefficient from mode fields by 2-D trapezoidal quadrature.
GammaBreakdown effective_gamma_breakdown(const ModeFieldGrid& grid, double omega,
                                         const MaterialConstants& constants = {});

double effective_gamma(const ModeFieldGrid& grid, double omega,
                       const MaterialConstants& constants = {});

/// Trapezoid weights for a strictly increasing coordinate vector.
std::vector<double> trapezoid_weights(const std::vector<double>& coords);

}  // namespace sfwm
