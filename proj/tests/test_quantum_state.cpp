#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sfwm/quantum_state.hpp"

using namespace sfwm;

namespace {

constexpr double kPi = std::numbers::pi;

std::array<oracle::cd, 4> as_oracle(const TwoModeState& s) {
    const auto v = rail_vector(s);
    return {v[0], v[1], v[2], v[3]};
}

}  // namespace

TEST_CASE("time-bin state") {
    const double r = 1.0 / std::sqrt(2.0);
    auto s = time_bin_state(0.0);
    CHECK(std::abs(s.amplitude("0,0") - cplx(r, 0)) < 1e-15);
    CHECK(std::abs(s.amplitude("1,1") - cplx(r, 0)) < 1e-15);
    s = time_bin_state(kPi / 2);
    CHECK(std::abs(s.amplitude("1,1") - cplx(-r, 0)) < 1e-15);
}

TEST_CASE("mzi source state limits") {
    auto s = mzi_source_state(kPi / 2);
    CHECK(std::abs(std::abs(s.amplitude("1,1")) - 1.0) < 1e-15);
    CHECK(std::abs(s.amplitude("2,0")) < 1e-15);
    CHECK(std::abs(s.amplitude("0,2")) < 1e-15);
    s = mzi_source_state(0.0);
    CHECK(std::abs(s.amplitude("1,1")) < 1e-15);
    CHECK(std::abs(std::abs(s.amplitude("2,0")) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(std::abs(s.amplitude("0,2")) - 1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("mzi state amplitudes follow the closed form") {
    for (double th = -3.0; th < 3.0; th += 0.37) {
        const cplx e = std::polar(1.0, 2 * th);
        const cplx bunch = (1.0 + e) / (2.0 * std::sqrt(2.0));
        const cplx anti = cplx(0, 1) * (1.0 - e) / 2.0;
        const auto s = mzi_source_state(th);
        CHECK(std::abs(s.amplitude("2,0") + bunch) < 1e-14);
        CHECK(std::abs(s.amplitude("0,2") - bunch) < 1e-14);
        CHECK(std::abs(s.amplitude("1,1") - anti) < 1e-14);
    }
}

TEST_CASE("path-entangled state") {
    const double r = 1.0 / std::sqrt(2.0);
    const auto s = path_entangled_state(kPi / 4);
    CHECK(std::abs(s.amplitude("A1A2") - cplx(r, 0)) < 1e-15);
    CHECK(std::abs(s.amplitude("B1B2") - cplx(0, r)) < 1e-15);
    CHECK(s.amplitude("A1B2") == cplx(0, 0));
}

TEST_CASE("all states are normalized") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int k = 0; k < 1000; ++k) {
        const double a = u(rng);
        CHECK(std::abs(time_bin_state(a).norm() - 1.0) < 1e-12);
        CHECK(std::abs(mzi_source_state(a).norm() - 1.0) < 1e-12);
        CHECK(std::abs(path_entangled_state(a).norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("rail unitaries are unitary") {
    for (double phi : {0.0, 0.4, 2.0}) {
        for (double chi : {0.0, kPi / 2, 1.1}) {
            const auto u = rail_unitary({phi, chi});
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    cplx dot = 0;
                    for (int k = 0; k < 2; ++k) dot += std::conj(u[k][i]) * u[k][j];
                    CHECK(std::abs(dot - cplx(i == j ? 1 : 0, 0)) < 1e-15);
                }
            }
        }
    }
}

TEST_CASE("analyzer coincidence agrees with the brute-force oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int k = 0; k < 500; ++k) {
        std::array<cplx, 4> v{};
        double n = 0;
        for (auto& a : v) {
            a = {u(rng), u(rng)};
            n += std::norm(a);
        }
        for (auto& a : v) a /= std::sqrt(n);
        const auto s = rail_state(v);
        const double rs = u(rng), ys = u(rng), ri = u(rng), yi = u(rng);
        const double ref = oracle::analyzer_coincidence({v[0], v[1], v[2], v[3]}, rs, ys, ri, yi);
        CHECK(std::abs(analyzer_coincidence(s, rs, ys, ri, yi) - ref) < 1e-14);
    }
}

TEST_CASE("path basis shows no interference") {
    for (double a = 0; a < 2 * kPi; a += 0.3) {
        CHECK(analyzer_coincidence(path_entangled_state(a), 0.4, 0.0, -1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    }
}

TEST_CASE("entangled fringe has unit visibility, product state none") {
    const RailRotation x{0.0, kPi / 2};
    const auto ent = path_entangled_state(0.0);
    const double v = fringe_visibility(ent, x, x);
    CHECK(std::abs(v - 1.0) < 1e-12);
    CHECK(std::abs(oracle::visibility(as_oracle(ent), 0.0, kPi / 2, 0.0, kPi / 2) - 1.0) < 1e-12);

    // |A1> (|A2> + |B2>)/sqrt(2).
    const double r = 1.0 / std::sqrt(2.0);
    const auto prod = rail_state({cplx(r, 0), cplx(r, 0), 0.0, 0.0});
    CHECK(fringe_visibility(prod, x, x) < 1e-12);
    CHECK(oracle::visibility(as_oracle(prod), 0.0, kPi / 2, 0.0, kPi / 2) < 1e-12);
}

TEST_CASE("fringe closed form") {
    for (double a = 0; a < 2 * kPi; a += 0.21) {
        const double ps = 0.3, pi = -1.2;
        const double p = analyzer_coincidence(path_entangled_state(a), ps, kPi / 2, pi, kPi / 2);
        CHECK(p == doctest::Approx((1 + std::cos(2 * a + ps + pi)) / 4).epsilon(1e-13));
    }
}

TEST_CASE("visibility is unchanged by a global phase") {
    const RailRotation x{0.2, kPi / 2};
    auto s = path_entangled_state(0.7);
    const double v0 = fringe_visibility(s, x, x);
    for (auto& a : s.amplitudes) a *= std::polar(1.0, 1.234);
    CHECK(std::abs(fringe_visibility(s, x, x) - v0) < 1e-12);
}

TEST_CASE("pair phase rotates only the B1B2 component") {
    const auto s = with_pair_phase(path_entangled_state(0.0), kPi / 4);
    CHECK(std::abs(s.amplitude("B1B2") - cplx(0, 1.0 / std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(s.amplitude("A1A2") - cplx(1.0 / std::sqrt(2.0), 0)) < 1e-15);
}
