// Synthetic inputs shared by the unit and acceptance tests.
#pragma once

#include <cmath>
#include <vector>

#include "sfwm/constants.hpp"
#include "sfwm/nonlinear_coefficient.hpp"

namespace fixtures {

inline std::vector<double> uniform(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

/// E = (E0 g(x) g(y), 0, 0), H = (0, E0 g(x) g(y) / Z0, 0), g(u) = exp(-u^2 / w^2).
/// core_half_width <= 0 marks every sample as core.
inline sfwm::ModeFieldGrid gaussian_mode(const std::vector<double>& xs, const std::vector<double>& ys,
                                         double waist, double e0 = 1.0, double core_half_width = 0.0,
                                         double z0 = 376.730) {
    sfwm::ModeFieldGrid g;
    g.x_coords = xs;
    g.y_coords = ys;
    const std::size_t n = xs.size() * ys.size();
    g.e_field.resize(n);
    g.h_field.resize(n);
    g.core_mask.resize(n);
    for (std::size_t iy = 0; iy < ys.size(); ++iy) {
        for (std::size_t ix = 0; ix < xs.size(); ++ix) {
            const std::size_t k = g.index(ix, iy);
            const double a = e0 * std::exp(-(xs[ix] * xs[ix] + ys[iy] * ys[iy]) / (waist * waist));
            g.e_field[k] = {a, 0.0, 0.0};
            g.h_field[k] = {0.0, a / z0, 0.0};
            g.core_mask[k] = core_half_width <= 0.0 ||
                             (std::abs(xs[ix]) <= core_half_width && std::abs(ys[iy]) <= core_half_width);
        }
    }
    return g;
}

}  // namespace fixtures
