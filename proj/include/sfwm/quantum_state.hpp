#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace sfwm {

using cplx = std::complex<double>;

/// Biphoton state written as complex amplitudes over a declared ket basis.
struct TwoModeState {
    std::vector<std::string> basis;
    std::vector<cplx> amplitudes;

    double norm() const;
    cplx amplitude(const std::string& ket) const;
};

/// (|0,0> + e^{2i alpha}|1,1>)/sqrt(2) over {"0,0", "1,1"}.
TwoModeState time_bin_state(double alpha);

/// MZI output over {"2,0", "1,1", "0,2"}: bunch part (1+e^{2i theta})/(2 sqrt 2) (-|2,0> + |0,2>)
/// and anti-bunch part i(1-e^{2i theta})/2 |1,1>.
TwoModeState mzi_source_state(double theta);

/// (|A1,A2> + e^{2i alpha}|B1,B2>)/sqrt(2) over {"A1A2", "B1B2"}.
TwoModeState path_entangled_state(double alpha);

/// Two-rail state over {"A1A2", "A1B2", "B1A2", "B1B2"}; missing kets have zero amplitude.
std::array<cplx, 4> rail_vector(const TwoModeState& state);
TwoModeState rail_state(const std::array<cplx, 4>& amplitudes);

/// Analyzer setting for one photon: R_z(phi) followed by R_y(chi).
struct RailRotation {
    double rz = 0.0;
    double ry = 0.0;
};

/// R_y(chi) R_z(phi) with R_z = diag(e^{-i phi/2}, e^{i phi/2}),
/// R_y = [[cos chi/2, -sin chi/2], [sin chi/2, cos chi/2]]; rail A = 0, rail B = 1.
std::array<std::array<cplx, 2>, 2> rail_unitary(const RailRotation& r);

/// Probability of a coincidence between the rail-A outputs of both analyzers.
double analyzer_coincidence(const TwoModeState& state, double rz_s, double ry_s, double rz_i,
                            double ry_i);

/// Applies e^{2i alpha} to the |B1,B2> component (the PS1 phase).
TwoModeState with_pair_phase(const TwoModeState& state, double alpha);

/// (max - min)/(max + min) of analyzer_coincidence over n uniformly spaced alpha in [0, 2 pi).
double fringe_visibility(const TwoModeState& state, const RailRotation& signal,
                         const RailRotation& idler, int n_samples = 720);

}  // namespace sfwm
