// sfwm-sim: spectra, circuit contributions, gamma and CAR from a JSON config.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "sfwm/cli/commands.hpp"
#include "sfwm/errors.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kDataError = 3, kDomainError = 4 };

int dispatch(const std::string& command, const std::string& config_path,
             const sfwm::cli::RunOptions& options) {
    using namespace sfwm::cli;
    std::optional<ConfigDocument> doc;
    if (!config_path.empty()) doc = load_config(config_path);

    if (doc && doc->root.contains("command")) {
        const auto& declared = doc->root["command"];
        if (!declared.is_string() || declared.get<std::string>() != command) {
            throw sfwm::ConfigError("command: config declares a different command than '" + command + "'");
        }
    }
    if (command == "circuit") {
        std::cout << run_circuit(doc ? &*doc : nullptr, options).report;
        return kOk;
    }
    if (!doc) throw sfwm::ConfigError(command + ": --config FILE is required");
    if (command == "spectrum") {
        std::cout << run_spectrum(*doc, options).report;
    } else if (command == "gamma") {
        const auto run = run_gamma(*doc, options);
        std::cout << run.report;
        if (run.scale_check_rel_diff && *run.scale_check_rel_diff > 1e-12) return kDomainError;
    } else {
        std::cout << run_car(*doc, options).report;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spontaneous four-wave mixing simulator for integrated photonic circuits", "sfwm-sim"};
    std::string command;
    std::string config_path;
    sfwm::cli::RunOptions options;
    std::string out_dir = ".";
    std::size_t grid_points = 0;
    std::string template_name;

    app.add_option("command", command, "spectrum | circuit | gamma | car")
        ->required()
        ->check(CLI::IsMember({"spectrum", "circuit", "gamma", "car"}));
    app.add_option("--config", config_path,
                   "JSON config file (relative names are also searched in $" +
                       std::string(sfwm::cli::kConfigPathEnv) + ")");
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_flag("--svg", options.svg, "also write SVG plots");
    app.add_option("--seed", options.seed, "random seed for synthesized data")->capture_default_str();
    app.add_option("--grid-points", grid_points, "override the spectral grid size")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
    app.add_flag("--all-strip", options.all_strip, "circuit: convert every segment to strip");
    app.add_option("--template", template_name, "circuit: app1_timebin | app2_path");
    app.add_flag("--verify-scale", options.verify_scale, "gamma: check amplitude scale invariance");
    app.add_flag("--synthesize", options.synthesize, "car: synthesize timestamps from the config model");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }
    options.out_dir = out_dir;
    if (grid_points) options.grid_points = grid_points;
    if (!template_name.empty()) options.template_name = template_name;

    try {
        return dispatch(command, config_path, options);
    } catch (const sfwm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const sfwm::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kDataError;
    } catch (const sfwm::DomainError& e) {
        std::cerr << "numeric domain error: " << e.what() << '\n';
        return kDomainError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
