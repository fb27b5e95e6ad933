#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sfwm/coincidence.hpp"
#include "sfwm/errors.hpp"
#include "sfwm/nonlinear_coefficient.hpp"
#include "sfwm/quantum_state.hpp"
#include "sfwm/sfwm_engine.hpp"
#include "sfwm/templates.hpp"

namespace py = pybind11;
using namespace sfwm;

namespace {

struct TemplateSummary {
    double ratio = 0.0;
    std::vector<std::pair<std::string, double>> band_flux;
};

TemplateSummary summarize_template(const std::string& name, bool all_strip) {
    CircuitTemplate t = circuit_template(name);
    if (all_strip) t = all_strip_variant(t);
    const auto contribs = segment_contributions(t.graph, t.pump, t.grid, t.options);
    TemplateSummary s;
    s.ratio = selection_ratio(contribs, t.band_lo(), t.band_hi(), t.designated);
    for (const auto& c : contribs) {
        s.band_flux.emplace_back(c.segment_id, band_flux(c.spectrum, t.band_lo(), t.band_hi()));
    }
    return s;
}

}  // namespace

PYBIND11_MODULE(_sfwm, m) {
    m.doc() = "Spontaneous four-wave mixing simulation core";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    auto config_error = py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
    py::register_exception<DataError>(m, "DataError", error.ptr());
    auto domain_error = py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<RangeError>(m, "RangeError", domain_error.ptr());
    py::register_exception<TopologyError>(m, "TopologyError", config_error.ptr());
    py::register_exception<UsageError>(m, "UsageError", config_error.ptr());

    m.def("angular_frequency_from_wavelength", &angular_frequency_from_wavelength,
          py::arg("wavelength_m"));
    m.def("wavelength_from_angular_frequency", &wavelength_from_angular_frequency,
          py::arg("omega_rad_s"));

    py::class_<DispersionModel>(m, "DispersionModel")
        .def(py::init<double, std::vector<double>>(), py::arg("omega_c"), py::arg("beta_even"))
        .def_property_readonly("omega_c", &DispersionModel::omega_c)
        .def("beta", &DispersionModel::beta, py::arg("order"));

    py::class_<PumpConfig>(m, "PumpConfig")
        .def_static("degenerate", &PumpConfig::degenerate, py::arg("omega_p"), py::arg("power_w"))
        .def_static("non_degenerate", &PumpConfig::non_degenerate, py::arg("omega_p1"),
                    py::arg("omega_p2"), py::arg("power1_w"), py::arg("power2_w"))
        .def_property_readonly("is_degenerate", &PumpConfig::is_degenerate)
        .def_property_readonly("omega_c", &PumpConfig::omega_c)
        .def_property_readonly("omega_d", &PumpConfig::omega_d)
        .def_property_readonly("power1_w", &PumpConfig::power1_w)
        .def_property_readonly("power2_w", &PumpConfig::power2_w);

    m.def("linear_mismatch", &linear_mismatch, py::arg("model"), py::arg("omega"), py::arg("pump"));

    py::enum_<WaveguideKind>(m, "WaveguideKind")
        .value("strip", WaveguideKind::strip)
        .value("shallow_ridge", WaveguideKind::shallow_ridge)
        .value("custom", WaveguideKind::custom);

    py::class_<WaveguideSpec>(m, "WaveguideSpec")
        .def_readonly("kind", &WaveguideSpec::kind)
        .def_readonly("length_m", &WaveguideSpec::length_m)
        .def_readonly("gamma", &WaveguideSpec::gamma)
        .def_readonly("attenuation_db_per_cm", &WaveguideSpec::attenuation_db_per_cm)
        .def("with_length", &WaveguideSpec::with_length, py::arg("length_m"));

    m.def("strip", &defaults::strip, py::arg("length_m"), py::arg("omega_c"));
    m.def("shallow_ridge", &defaults::shallow_ridge, py::arg("length_m"), py::arg("omega_c"));
    m.def("default_degenerate_pump", &defaults::degenerate_pump);
    m.def("default_non_degenerate_pump", &defaults::non_degenerate_pump);

    py::class_<SpectralGrid>(m, "SpectralGrid")
        .def_static("centred", &SpectralGrid::centred, py::arg("omega_centre"),
                    py::arg("half_span"), py::arg("n_points") = 4096)
        .def("__len__", &SpectralGrid::size)
        .def("detuning", &SpectralGrid::detuning, py::arg("i"))
        .def("omega", &SpectralGrid::omega, py::arg("i"))
        .def_property_readonly("centre", &SpectralGrid::centre)
        .def_property_readonly("half_span", &SpectralGrid::half_span);

    py::class_<BiphotonSpectrum>(m, "BiphotonSpectrum")
        .def_readonly("grid", &BiphotonSpectrum::grid)
        .def_readonly("flux_density", &BiphotonSpectrum::flux_density)
        .def_readonly("label", &BiphotonSpectrum::label);

    m.def("gain_from_mismatch", &gain_from_mismatch, py::arg("power_term"), py::arg("delta_k"),
          py::arg("length_m"));
    m.def("gain_at_mismatch", &gain_at_mismatch, py::arg("gamma"), py::arg("pump"),
          py::arg("delta_k"), py::arg("length_m"));
    m.def("parametric_gain", &parametric_gain, py::arg("spec"), py::arg("pump"), py::arg("omega"));
    m.def("total_mismatch_at_detuning", &total_mismatch_at_detuning, py::arg("spec"),
          py::arg("pump"), py::arg("detuning"));
    m.def("biphoton_spectrum", &biphoton_spectrum, py::arg("spec"), py::arg("pump"),
          py::arg("grid"), py::arg("label") = std::string{});
    m.def("band_flux", &band_flux, py::arg("spectrum"), py::arg("omega_lo"), py::arg("omega_hi"),
          py::arg("transmission") = 1.0);
    m.def("half_max_half_width", &half_max_half_width, py::arg("spectrum"));

    py::class_<TemplateSummary>(m, "TemplateSummary")
        .def_readonly("ratio", &TemplateSummary::ratio)
        .def_readonly("band_flux", &TemplateSummary::band_flux);
    m.def("summarize_template", &summarize_template, py::arg("name"), py::arg("all_strip") = false,
          "Selection ratio and per-segment band flux of a shipped circuit template.");

    py::class_<MaterialConstants>(m, "MaterialConstants")
        .def(py::init<>())
        .def_readwrite("n0", &MaterialConstants::n0)
        .def_readwrite("n2", &MaterialConstants::n2)
        .def_readwrite("z0", &MaterialConstants::z0);

    py::class_<ModeFieldGrid>(m, "ModeFieldGrid")
        .def(py::init<>())
        .def_readwrite("x_coords", &ModeFieldGrid::x_coords)
        .def_readwrite("y_coords", &ModeFieldGrid::y_coords)
        .def_readwrite("e_field", &ModeFieldGrid::e_field)
        .def_readwrite("h_field", &ModeFieldGrid::h_field)
        .def_readwrite("core_mask", &ModeFieldGrid::core_mask);
    m.def("effective_gamma", &effective_gamma, py::arg("grid"), py::arg("omega"),
          py::arg("constants") = MaterialConstants{});

    py::class_<TwoModeState>(m, "TwoModeState")
        .def_readonly("basis", &TwoModeState::basis)
        .def_readonly("amplitudes", &TwoModeState::amplitudes)
        .def("norm", &TwoModeState::norm);
    py::class_<RailRotation>(m, "RailRotation")
        .def(py::init([](double rz, double ry) { return RailRotation{rz, ry}; }),
             py::arg("rz") = 0.0, py::arg("ry") = 0.0);
    m.def("time_bin_state", &time_bin_state, py::arg("alpha"));
    m.def("mzi_source_state", &mzi_source_state, py::arg("theta"));
    m.def("path_entangled_state", &path_entangled_state, py::arg("alpha"));
    m.def("analyzer_coincidence", &analyzer_coincidence, py::arg("state"), py::arg("rz_s"),
          py::arg("ry_s"), py::arg("rz_i"), py::arg("ry_i"));
    m.def("fringe_visibility", &fringe_visibility, py::arg("state"), py::arg("signal"),
          py::arg("idler"), py::arg("n_samples") = 720);

    py::class_<CoincidenceHistogram>(m, "CoincidenceHistogram")
        .def_readonly("bin_width_s", &CoincidenceHistogram::bin_width_s)
        .def_readonly("window_s", &CoincidenceHistogram::window_s)
        .def_readonly("counts", &CoincidenceHistogram::counts)
        .def("total", &CoincidenceHistogram::total);
    m.def(
        "build_histogram",
        [](const std::vector<double>& s, const std::vector<double>& i, double bin, double window,
           double acq) { return build_histogram(s, i, bin, window, acq); },
        py::arg("signal"), py::arg("idler"), py::arg("bin_width_s"), py::arg("window_s"),
        py::arg("acquisition_time_s") = 0.0);

    py::class_<CarResult>(m, "CarResult")
        .def_readonly("car", &CarResult::car)
        .def_readonly("sigma", &CarResult::sigma)
        .def_readonly("peak_mean", &CarResult::peak_mean)
        .def_readonly("accidental_mean", &CarResult::accidental_mean);
    m.def("car_from_histogram", &car_from_histogram, py::arg("hist"), py::arg("peak_center_bin"),
          py::arg("guard_bins") = 0);
    m.def("find_peak_bin", &find_peak_bin, py::arg("hist"));

    py::class_<RateModel>(m, "RateModel")
        .def(py::init<>())
        .def_readwrite("pair_rate", &RateModel::pair_rate)
        .def_readwrite("noise_rate_signal", &RateModel::noise_rate_signal)
        .def_readwrite("noise_rate_idler", &RateModel::noise_rate_idler)
        .def_readwrite("efficiency_signal", &RateModel::efficiency_signal)
        .def_readwrite("efficiency_idler", &RateModel::efficiency_idler)
        .def_readwrite("dark_rate_signal", &RateModel::dark_rate_signal)
        .def_readwrite("dark_rate_idler", &RateModel::dark_rate_idler)
        .def_readwrite("coincidence_window_s", &RateModel::coincidence_window_s);
    py::class_<RatePrediction>(m, "RatePrediction")
        .def_readonly("singles_signal", &RatePrediction::singles_signal)
        .def_readonly("singles_idler", &RatePrediction::singles_idler)
        .def_readonly("coincidence", &RatePrediction::coincidence)
        .def_readonly("accidental", &RatePrediction::accidental)
        .def_readonly("car", &RatePrediction::car);
    m.def("predict_rates", &predict_rates, py::arg("model"));
    m.def(
        "synthesize_timestamps",
        [](const RateModel& model, double duration, std::uint64_t seed, double delay,
           double jitter) {
            const auto s = synthesize_timestamps(model, duration, seed, {delay, jitter});
            return std::make_pair(s.signal, s.idler);
        },
        py::arg("model"), py::arg("duration_s"), py::arg("seed"), py::arg("idler_delay_s") = 0.0,
        py::arg("jitter_sigma_s") = 0.0);
}
