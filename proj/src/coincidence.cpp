#include "sfwm/coincidence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "sfwm/dispersion.hpp"
#include "sfwm/errors.hpp"

namespace sfwm {

double FilterChannel::transmission() const {
    return std::pow(10.0, -loss_db / 10.0);
}

std::pair<double, double> FilterChannel::passband_omega() const {
    const double lo_nm = center_nm - 0.5 * bandwidth_nm;
    const double hi_nm = center_nm + 0.5 * bandwidth_nm;
    return {angular_frequency_from_wavelength(hi_nm * 1e-9),
            angular_frequency_from_wavelength(lo_nm * 1e-9)};
}

std::array<FilterGroup, 4> filter_table_default() {
    return {{
        {1, {"C30", 1553.3, 2.9, 0.47}, {"C27", 1555.7, 2.4, 0.59}},
        {2, {"C33", 1550.9, 3.1, 0.43}, {"C24", 1558.2, 1.9, 0.45}},
        {3, {"C35", 1549.3, 2.7, 0.50}, {"C22", 1559.8, 2.9, 0.47}},
        {4, {"C46", 1540.6, 3.3, 0.52}, {"C11", 1568.8, 2.0, 0.51}},
    }};
}

double CoincidenceHistogram::bin_lower_edge(std::size_t i) const {
    return -0.5 * window_s + static_cast<double>(i) * bin_width_s;
}

double CoincidenceHistogram::bin_center(std::size_t i) const {
    return bin_lower_edge(i) + 0.5 * bin_width_s;
}

std::uint64_t CoincidenceHistogram::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

CoincidenceHistogram build_histogram(std::span<const double> signal_ts,
                                     std::span<const double> idler_ts, double bin_width_s,
                                     double window_s, double acquisition_time_s) {
    if (!(bin_width_s > 0.0)) throw DomainError("bin width must be positive");
    if (!(window_s > 0.0)) throw DomainError("histogram window must be positive");
    const double ratio = window_s / bin_width_s;
    const double n_bins_f = std::round(ratio);
    if (n_bins_f < 1.0 || std::abs(ratio - n_bins_f) > 1e-9 * ratio) {
        throw DomainError("histogram window must be a multiple of the bin width");
    }
    if (!std::is_sorted(signal_ts.begin(), signal_ts.end()) ||
        !std::is_sorted(idler_ts.begin(), idler_ts.end())) {
        throw DataError("timestamps must be sorted ascending");
    }

    CoincidenceHistogram h;
    h.bin_width_s = bin_width_s;
    h.window_s = window_s;
    h.counts.assign(static_cast<std::size_t>(n_bins_f), 0);
    h.acquisition_time_s = acquisition_time_s;

    const double half = 0.5 * window_s;
    const std::size_t n_bins = h.counts.size();
    std::size_t first = 0;
    for (double s : signal_ts) {
        while (first < idler_ts.size() && idler_ts[first] - s < -half) ++first;
        for (std::size_t j = first; j < idler_ts.size(); ++j) {
            const double dt = idler_ts[j] - s;
            if (dt >= half) break;
            auto bin = static_cast<std::size_t>(std::floor((dt + half) / bin_width_s));
            bin = std::min(bin, n_bins - 1);
            ++h.counts[bin];
        }
    }
    return h;
}

CarResult car_from_histogram(const CoincidenceHistogram& hist, std::size_t peak_center_bin,
                             std::size_t guard_bins) {
    const std::size_t n = hist.size();
    if (n < 15) throw DomainError("CAR needs a histogram with at least 15 bins");
    const std::size_t half = kPeakWindowBins / 2;
    if (peak_center_bin < half || peak_center_bin + half >= n) {
        throw DomainError("peak window does not fit inside the histogram");
    }
    if (hist.total() == 0) throw DomainError("CAR is undefined for an all-zero histogram");

    CarResult r;
    r.peak_first = peak_center_bin - half;
    r.peak_last = peak_center_bin + half;
    const std::size_t excl_lo = r.peak_first >= guard_bins ? r.peak_first - guard_bins : 0;
    const std::size_t excl_hi = std::min(n - 1, r.peak_last + guard_bins);

    double peak_sum = 0.0;
    double acc_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = static_cast<double>(hist.counts[i]);
        if (i >= r.peak_first && i <= r.peak_last) {
            peak_sum += c;
        } else if (i < excl_lo || i > excl_hi) {
            acc_sum += c;
            ++r.accidental_bins;
        }
    }
    if (r.accidental_bins == 0) throw DomainError("no accidental bins outside the peak window");
    r.peak_mean = peak_sum / static_cast<double>(kPeakWindowBins);
    r.accidental_mean = acc_sum / static_cast<double>(r.accidental_bins);
    if (r.accidental_mean == 0.0) {
        r.car = std::numeric_limits<double>::infinity();
        return r;
    }
    r.car = r.peak_mean / r.accidental_mean;
    if (peak_sum > 0.0) r.sigma = r.car * std::sqrt(1.0 / peak_sum + 1.0 / acc_sum);
    return r;
}

std::size_t find_peak_bin(const CoincidenceHistogram& hist) {
    const std::size_t half = kPeakWindowBins / 2;
    if (hist.size() < kPeakWindowBins) throw DomainError("histogram too small for a peak window");
    std::size_t best = half;
    for (std::size_t i = half; i + half < hist.size(); ++i) {
        if (hist.counts[i] > hist.counts[best]) best = i;
    }
    return best;
}

void RateModel::validate() const {
    const double vals[] = {pair_rate,       noise_rate_signal, noise_rate_idler,
                           dark_rate_signal, dark_rate_idler,  coincidence_window_s};
    for (double v : vals) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("rate model values must be >= 0");
    }
    if (!(efficiency_signal >= 0.0 && efficiency_signal <= 1.0) ||
        !(efficiency_idler >= 0.0 && efficiency_idler <= 1.0)) {
        throw ConfigError("detector efficiencies must lie in [0, 1]");
    }
}

RatePrediction predict_rates(const RateModel& m) {
    m.validate();
    if (!(m.coincidence_window_s > 0.0)) throw DomainError("coincidence window must be positive");
    RatePrediction p;
    p.singles_signal = (m.pair_rate + m.noise_rate_signal) * m.efficiency_signal + m.dark_rate_signal;
    p.singles_idler = (m.pair_rate + m.noise_rate_idler) * m.efficiency_idler + m.dark_rate_idler;
    p.coincidence = m.pair_rate * m.efficiency_signal * m.efficiency_idler;
    p.accidental = p.singles_signal * p.singles_idler * m.coincidence_window_s;
    if (p.coincidence == 0.0) {
        p.car = 1.0;
    } else if (p.accidental == 0.0) {
        p.car = std::numeric_limits<double>::infinity();
    } else {
        p.car = 1.0 + p.coincidence / p.accidental;
    }
    return p;
}

RateModel with_target_singles(RateModel model, double singles_signal, double singles_idler) {
    const auto solve = [](double target, double pairs, double eta, double dark) {
        if (!(eta > 0.0)) throw ConfigError("target singles need a non-zero efficiency");
        const double noise = (target - dark) / eta - pairs;
        if (noise < 0.0) throw ConfigError("target singles rate is below the pair contribution");
        return noise;
    };
    model.noise_rate_signal =
        solve(singles_signal, model.pair_rate, model.efficiency_signal, model.dark_rate_signal);
    model.noise_rate_idler =
        solve(singles_idler, model.pair_rate, model.efficiency_idler, model.dark_rate_idler);
    return model;
}

namespace {

void poisson_process(std::mt19937_64& rng, double rate, double duration, std::vector<double>& out) {
    if (rate <= 0.0) return;
    std::exponential_distribution<double> gap(rate);
    for (double t = gap(rng); t < duration; t += gap(rng)) out.push_back(t);
}

}  // namespace

TimestampStreams synthesize_timestamps(const RateModel& model, double duration_s,
                                       std::uint64_t seed, const SynthesisOptions& options) {
    model.validate();
    if (!(duration_s > 0.0)) throw DomainError("synthesis duration must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> jitter(0.0, 1.0);
    const auto smear = [&](double t) {
        return options.jitter_sigma_s > 0.0 ? t + options.jitter_sigma_s * jitter(rng) : t;
    };

    TimestampStreams out;
    std::vector<double> pairs;
    poisson_process(rng, model.pair_rate, duration_s, pairs);
    for (double t : pairs) {
        if (unit(rng) < model.efficiency_signal) out.signal.push_back(smear(t));
        if (unit(rng) < model.efficiency_idler) out.idler.push_back(smear(t + options.idler_delay_s));
    }
    poisson_process(rng, model.noise_rate_signal * model.efficiency_signal + model.dark_rate_signal,
                    duration_s, out.signal);
    poisson_process(rng, model.noise_rate_idler * model.efficiency_idler + model.dark_rate_idler,
                    duration_s, out.idler);
    std::sort(out.signal.begin(), out.signal.end());
    std::sort(out.idler.begin(), out.idler.end());
    return out;
}

}  // namespace sfwm
