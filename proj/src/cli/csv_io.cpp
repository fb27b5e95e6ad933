#include "sfwm/cli/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sfwm/constants.hpp"
#include "sfwm/errors.hpp"

namespace sfwm::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kRadPerTHz = constants::kTwoPi * 1e12;

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

void write_hash(std::ostream& out, const std::string& config_hash) {
    if (!config_hash.empty()) out << "# config_hash: " << config_hash << '\n';
}

void expect_header(const CsvTable& t, const std::vector<std::string>& expected) {
    for (const auto& name : expected) (void)t.column(name);
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    const std::string t = trim(text);
    double value = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || t.empty()) {
        throw DataError("not a number: '" + text + "'");
    }
    return value;
}

std::size_t CsvTable::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError("missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

double CsvTable::number(std::size_t row, std::size_t col) const {
    try {
        return parse_double(rows.at(row).at(col));
    } catch (const DataError& e) {
        throw DataError("line " + std::to_string(row_lines.at(row)) + ", column '" + header.at(col) +
                        "': " + e.what());
    }
}

const std::string& CsvTable::meta_value(const std::string& key) const {
    const auto it = meta.find(key);
    if (it == meta.end()) throw DataError("missing header comment '# " + key + ":'");
    return it->second;
}

CsvTable read_csv(std::istream& in, const std::string& source) {
    CsvTable t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = trim(line);
        if (s.empty()) continue;
        if (s[0] == '#') {
            const auto colon = s.find(':');
            if (colon != std::string::npos) {
                t.meta[trim(s.substr(1, colon - 1))] = trim(s.substr(colon + 1));
            }
            continue;
        }
        std::vector<std::string> cells = split_row(s);
        if (t.header.empty()) {
            t.header = std::move(cells);
            continue;
        }
        if (cells.size() != t.header.size()) {
            throw DataError(source + ": line " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " fields, expected " +
                            std::to_string(t.header.size()));
        }
        t.rows.push_back(std::move(cells));
        t.row_lines.push_back(line_no);
    }
    if (t.header.empty()) throw DataError(source + ": empty file (no header row)");
    return t;
}

CsvTable read_csv_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    try {
        return read_csv(in, path.string());
    } catch (const DataError& e) {
        const std::string what = e.what();
        if (what.rfind(path.string(), 0) == 0) throw;
        throw DataError(path.string() + ": " + what);
    }
}

void write_text_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw DataError("cannot write '" + path.string() + "'");
}

void write_spectrum_csv(std::ostream& out, const BiphotonSpectrum& spectrum,
                        const std::string& config_hash) {
    const SpectralGrid& g = spectrum.grid;
    write_hash(out, config_hash);
    out << "# label: " << spectrum.label << '\n';
    out << "# omega_centre_rad_s: " << format_double(g.centre()) << '\n';
    out << "# half_span_rad_s: " << format_double(g.half_span()) << '\n';
    out << "omega_rad_s,detuning_thz,flux_density_per_hz\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        out << format_double(g.omega(i)) << ',' << format_double(g.detuning(i) / kRadPerTHz) << ','
            << format_double(spectrum.flux_density[i]) << '\n';
    }
}

BiphotonSpectrum read_spectrum_csv(std::istream& in) {
    const CsvTable t = read_csv(in, "spectrum");
    expect_header(t, {"omega_rad_s", "detuning_thz", "flux_density_per_hz"});
    const double centre = parse_double(t.meta_value("omega_centre_rad_s"));
    const double half = parse_double(t.meta_value("half_span_rad_s"));
    if (t.rows.size() < 2) throw DataError("spectrum needs at least two rows");
    BiphotonSpectrum s{SpectralGrid::centred(centre, half, t.rows.size()), {}, {}};
    if (const auto it = t.meta.find("label"); it != t.meta.end()) s.label = it->second;
    const std::size_t c_om = t.column("omega_rad_s");
    const std::size_t c_flux = t.column("flux_density_per_hz");
    s.flux_density.reserve(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double om = t.number(i, c_om);
        if (std::abs(om - s.grid.omega(i)) > 1e-12 * std::abs(centre)) {
            throw DataError("line " + std::to_string(t.row_lines[i]) +
                            ": omega does not match the uniform grid in the header");
        }
        s.flux_density.push_back(t.number(i, c_flux));
    }
    return s;
}

void write_mismatch_csv(std::ostream& out, const WaveguideSpec& spec, const PumpConfig& pump,
                        const SpectralGrid& grid, const std::string& config_hash) {
    write_hash(out, config_hash);
    out << "omega_rad_s,detuning_thz,delta_k_per_m,gain\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double det = grid.detuning(i);
        out << format_double(grid.omega(i)) << ',' << format_double(det / kRadPerTHz) << ','
            << format_double(total_mismatch_at_detuning(spec, pump, det)) << ','
            << format_double(parametric_gain_at_detuning(spec, pump, det)) << '\n';
    }
}

void write_histogram_csv(std::ostream& out, const CoincidenceHistogram& hist,
                         const std::string& config_hash) {
    write_hash(out, config_hash);
    out << "# bin_width_s: " << format_double(hist.bin_width_s) << '\n';
    out << "# window_s: " << format_double(hist.window_s) << '\n';
    out << "# acquisition_time_s: " << format_double(hist.acquisition_time_s) << '\n';
    out << "bin_center_s,counts\n";
    for (std::size_t i = 0; i < hist.size(); ++i) {
        out << format_double(hist.bin_center(i)) << ',' << hist.counts[i] << '\n';
    }
}

CoincidenceHistogram read_histogram_csv(std::istream& in) {
    const CsvTable t = read_csv(in, "histogram");
    expect_header(t, {"bin_center_s", "counts"});
    CoincidenceHistogram h;
    h.bin_width_s = parse_double(t.meta_value("bin_width_s"));
    h.window_s = parse_double(t.meta_value("window_s"));
    if (const auto it = t.meta.find("acquisition_time_s"); it != t.meta.end()) {
        h.acquisition_time_s = parse_double(it->second);
    }
    if (!(h.bin_width_s > 0.0)) throw DataError("histogram bin_width_s must be positive");
    const std::size_t c_counts = t.column("counts");
    const std::size_t c_center = t.column("bin_center_s");
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const std::string& cell = t.rows[i][c_counts];
        std::uint64_t v = 0;
        const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size() || cell.empty()) {
            throw DataError("line " + std::to_string(t.row_lines[i]) + ": counts must be a non-negative integer");
        }
        h.counts.push_back(v);
        const double centre = t.number(i, c_center);
        if (std::abs(centre - h.bin_center(i)) > 1e-6 * h.bin_width_s) {
            throw DataError("line " + std::to_string(t.row_lines[i]) +
                            ": bin centre inconsistent with bin_width_s and window_s");
        }
    }
    return h;
}

void write_timestamps_csv(std::ostream& out, const TimestampStreams& streams,
                          const std::string& config_hash) {
    write_hash(out, config_hash);
    out << "channel,timestamp_s\n";
    for (double t : streams.signal) out << "signal," << format_double(t) << '\n';
    for (double t : streams.idler) out << "idler," << format_double(t) << '\n';
}

TimestampStreams read_timestamps_csv(std::istream& in) {
    const CsvTable t = read_csv(in, "timestamps");
    expect_header(t, {"channel", "timestamp_s"});
    if (t.rows.empty()) throw DataError("timestamp file contains no events");
    const std::size_t c_ch = t.column("channel");
    const std::size_t c_ts = t.column("timestamp_s");
    TimestampStreams s;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const std::string& ch = t.rows[i][c_ch];
        std::vector<double>* target = nullptr;
        if (ch == "signal") {
            target = &s.signal;
        } else if (ch == "idler") {
            target = &s.idler;
        } else {
            throw DataError("line " + std::to_string(t.row_lines[i]) + ": unknown channel '" + ch + "'");
        }
        const double ts = t.number(i, c_ts);
        if (!std::isfinite(ts)) throw DataError("line " + std::to_string(t.row_lines[i]) + ": non-finite timestamp");
        if (!target->empty() && ts < target->back()) {
            throw DataError("line " + std::to_string(t.row_lines[i]) + ": " + ch +
                            " timestamps are not monotone");
        }
        target->push_back(ts);
    }
    return s;
}

namespace {

const std::vector<std::string> kModefieldColumns = {
    "x_m",   "y_m",   "ex_re", "ex_im", "ey_re", "ey_im", "ez_re",  "ez_im",
    "hx_re", "hx_im", "hy_re", "hy_im", "hz_re", "hz_im", "in_core"};

}  // namespace

void write_modefield_csv(std::ostream& out, const ModeFieldGrid& grid) {
    grid.validate();
    for (std::size_t k = 0; k < kModefieldColumns.size(); ++k) {
        out << (k ? "," : "") << kModefieldColumns[k];
    }
    out << '\n';
    for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
        for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
            const std::size_t n = grid.index(ix, iy);
            out << format_double(grid.x_coords[ix]) << ',' << format_double(grid.y_coords[iy]);
            for (const Vec3c* f : {&grid.e_field[n], &grid.h_field[n]}) {
                for (const auto& c : *f) {
                    out << ',' << format_double(c.real()) << ',' << format_double(c.imag());
                }
            }
            out << ',' << (grid.core_mask[n] ? 1 : 0) << '\n';
        }
    }
}

ModeFieldGrid read_modefield_csv(std::istream& in) {
    const CsvTable t = read_csv(in, "modefield");
    std::vector<std::size_t> col;
    for (const auto& name : kModefieldColumns) col.push_back(t.column(name));
    if (t.rows.empty()) throw DataError("mode-field file contains no samples");

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        xs.push_back(t.number(i, col[0]));
        ys.push_back(t.number(i, col[1]));
    }
    ModeFieldGrid g;
    g.x_coords = xs;
    g.y_coords = ys;
    for (auto* v : {&g.x_coords, &g.y_coords}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    const std::size_t nx = g.nx(), ny = g.ny();
    if (nx * ny != t.rows.size()) {
        throw DataError("mode-field samples do not form a rectilinear grid (" + std::to_string(nx) +
                        " x values, " + std::to_string(ny) + " y values, " +
                        std::to_string(t.rows.size()) + " rows)");
    }
    g.e_field.assign(nx * ny, Vec3c{});
    g.h_field.assign(nx * ny, Vec3c{});
    g.core_mask.assign(nx * ny, false);
    std::vector<bool> seen(nx * ny, false);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto ix = static_cast<std::size_t>(
            std::lower_bound(g.x_coords.begin(), g.x_coords.end(), xs[i]) - g.x_coords.begin());
        const auto iy = static_cast<std::size_t>(
            std::lower_bound(g.y_coords.begin(), g.y_coords.end(), ys[i]) - g.y_coords.begin());
        const std::size_t n = g.index(ix, iy);
        if (seen[n]) {
            throw DataError("line " + std::to_string(t.row_lines[i]) + ": duplicate grid point");
        }
        seen[n] = true;
        for (std::size_t k = 0; k < 3; ++k) {
            g.e_field[n][k] = {t.number(i, col[2 + 2 * k]), t.number(i, col[3 + 2 * k])};
            g.h_field[n][k] = {t.number(i, col[8 + 2 * k]), t.number(i, col[9 + 2 * k])};
        }
        const std::string& core = t.rows[i][col[14]];
        if (core == "1" || core == "true") {
            g.core_mask[n] = true;
        } else if (core != "0" && core != "false") {
            throw DataError("line " + std::to_string(t.row_lines[i]) + ": in_core must be 0 or 1");
        }
    }
    g.validate();
    return g;
}

void write_contribution_summary(std::ostream& out, const std::vector<ContributionRow>& rows,
                                double ratio, double band_lo_thz, double band_hi_thz,
                                const std::string& config_hash) {
    write_hash(out, config_hash);
    out << "# band_lo_detuning_thz: " << format_double(band_lo_thz) << '\n';
    out << "# band_hi_detuning_thz: " << format_double(band_hi_thz) << '\n';
    out << "# selection_ratio: " << format_double(ratio) << '\n';
    out << "segment,part,designated,pump_power_w,transmission,band_flux_per_s\n";
    for (const auto& r : rows) {
        out << r.segment_id << ',' << r.part << ',' << (r.designated ? 1 : 0) << ','
            << format_double(r.pump_power_w) << ',' << format_double(r.transmission) << ','
            << format_double(r.band_flux_per_s) << '\n';
    }
}

}  // namespace sfwm::cli
