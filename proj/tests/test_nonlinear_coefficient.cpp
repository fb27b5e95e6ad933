#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sfwm/dispersion.hpp"
#include "sfwm/errors.hpp"
#include "sfwm/nonlinear_coefficient.hpp"

using namespace sfwm;

namespace {

const double kOmega = angular_frequency_from_wavelength(1552.5e-9);
constexpr double kWaist = 0.4e-6;
constexpr double kExtent = 2.4e-6;  // 6 waists

}  // namespace

TEST_CASE("gaussian fixture matches the 10x finer quadrature oracle") {
    const MaterialConstants mc;
    const auto axis = fixtures::uniform(-kExtent, kExtent, 61);
    const double got = effective_gamma(fixtures::gaussian_mode(axis, axis, kWaist), kOmega, mc);
    const double fine = oracle::gaussian_gamma_trapezoid(kWaist, kExtent, 601, kOmega, mc.n0, mc.n2, mc.c);
    CHECK(std::abs(got - fine) / fine < 1e-6);
    const double exact = oracle::gaussian_gamma_exact(kWaist, kOmega, mc.n0, mc.n2, mc.c);
    CHECK(std::abs(got - exact) / exact < 1e-6);
}

TEST_CASE("breakdown itemizes the integrals") {
    const auto axis = fixtures::uniform(-kExtent, kExtent, 41);
    const double e0 = 2.0e6;
    const auto b = effective_gamma_breakdown(fixtures::gaussian_mode(axis, axis, kWaist, e0), kOmega);
    const double s2 = kWaist * std::sqrt(M_PI / 2.0);
    const double s4 = kWaist * std::sqrt(M_PI) / 2.0;
    CHECK(b.core_e4_integral == doctest::Approx(std::pow(e0, 4) * s4 * s4).epsilon(1e-8));
    CHECK(b.poynting_integral == doctest::Approx(e0 * e0 / 376.730 * s2 * s2).epsilon(1e-8));
    CHECK(b.omega == kOmega);
}

TEST_CASE("amplitude scale invariance") {
    const auto axis = fixtures::uniform(-kExtent, kExtent, 41);
    const auto base = fixtures::gaussian_mode(axis, axis, kWaist, 1.0, 0.5e-6);
    const double g1 = effective_gamma(base, kOmega);
    for (double s : {1e-3, 0.37, 7.5, 1e4}) {
        const double gs = effective_gamma(fixtures::gaussian_mode(axis, axis, kWaist, s, 0.5e-6), kOmega);
        CHECK(std::abs(gs - g1) / g1 < 1e-12);
    }
}

TEST_CASE("gamma is linear in omega") {
    const auto axis = fixtures::uniform(-kExtent, kExtent, 41);
    const auto grid = fixtures::gaussian_mode(axis, axis, kWaist);
    const double g1 = effective_gamma(grid, kOmega);
    CHECK(std::abs(effective_gamma(grid, 2.0 * kOmega) - 2.0 * g1) / (2.0 * g1) < 1e-12);
    CHECK_THROWS_AS(effective_gamma(grid, 0.0), DomainError);
}

TEST_CASE("non-uniform grid converges under refinement") {
    // Graded axis: dense in the middle, sparse outside.
    auto graded = [](std::size_t n) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
            v[i] = kExtent * std::sinh(2.0 * t) / std::sinh(2.0);
        }
        return v;
    };
    const double exact = oracle::gaussian_gamma_exact(kWaist, kOmega, 3.48, 4.5e-18, 2.99792458e8);
    const auto a = graded(41), b = graded(81);
    const double ga = effective_gamma(fixtures::gaussian_mode(a, a, kWaist), kOmega);
    const double gb = effective_gamma(fixtures::gaussian_mode(b, b, kWaist), kOmega);
    CHECK(std::abs(gb - ga) / gb < 0.01);
    CHECK(std::abs(gb - exact) <= std::abs(ga - exact) + 1e-12 * exact);
}

TEST_CASE("core mask restricts the numerator only") {
    const auto axis = fixtures::uniform(-kExtent, kExtent, 49);
    const double full = effective_gamma(fixtures::gaussian_mode(axis, axis, kWaist), kOmega);
    const double core = effective_gamma(fixtures::gaussian_mode(axis, axis, kWaist, 1.0, 0.3e-6), kOmega);
    CHECK(core < full);
    CHECK(core > 0.3 * full);
}

TEST_CASE("degenerate inputs") {
    const auto axis = fixtures::uniform(-kExtent, kExtent, 11);
    auto grid = fixtures::gaussian_mode(axis, axis, kWaist);
    SUBCASE("empty core") {
        std::fill(grid.core_mask.begin(), grid.core_mask.end(), false);
        CHECK_THROWS_AS(effective_gamma(grid, kOmega), DataError);
    }
    SUBCASE("zero Poynting flux") {
        for (auto& h : grid.h_field) h = {0.0, 0.0, 0.0};
        CHECK_THROWS_AS(effective_gamma(grid, kOmega), DataError);
    }
    SUBCASE("backward mode") {
        for (auto& h : grid.h_field) h[1] = -h[1];
        CHECK_THROWS_AS(effective_gamma(grid, kOmega), DataError);
    }
    SUBCASE("size mismatch") {
        grid.e_field.pop_back();
        CHECK_THROWS_AS(effective_gamma(grid, kOmega), DataError);
    }
    SUBCASE("unsorted coordinates") {
        std::swap(grid.x_coords[2], grid.x_coords[3]);
        CHECK_THROWS_AS(effective_gamma(grid, kOmega), DataError);
    }
}

TEST_CASE("trapezoid weights") {
    const auto w = trapezoid_weights({0.0, 1.0, 3.0, 3.5});
    REQUIRE(w.size() == 4);
    CHECK(w[0] == 0.5);
    CHECK(w[1] == 1.5);
    CHECK(w[2] == 1.25);
    CHECK(w[3] == 0.25);
}
