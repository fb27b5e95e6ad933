#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sfwm {

/// DWDM filter channel modelled as a rectangular passband with flat loss.
struct FilterChannel {
    std::string itu_channel;
    double center_nm = 0.0;
    double loss_db = 0.0;
    double bandwidth_nm = 0.0;

    double transmission() const;
    /// Passband [omega_lo, omega_hi] in rad/s.
    std::pair<double, double> passband_omega() const;
};

struct FilterGroup {
    int group = 0;
    FilterChannel signal;
    FilterChannel idler;
};

/// The four signal/idler filter groups used in the measurements.
std::array<FilterGroup, 4> filter_table_default();

struct CoincidenceHistogram {
    double bin_width_s = 0.0;
    double window_s = 0.0;              // histogram spans [-window/2, window/2)
    std::vector<std::uint64_t> counts;
    double acquisition_time_s = 0.0;

    std::size_t size() const { return counts.size(); }
    double bin_lower_edge(std::size_t i) const;
    double bin_center(std::size_t i) const;
    std::uint64_t total() const;
};

/// Histogram of idler - signal time differences within [-window/2, window/2).
CoincidenceHistogram build_histogram(std::span<const double> signal_ts,
                                     std::span<const double> idler_ts, double bin_width_s,
                                     double window_s, double acquisition_time_s = 0.0);

struct CarResult {
    double car = 0.0;
    double peak_mean = 0.0;
    double accidental_mean = 0.0;
    std::size_t peak_first = 0;   // inclusive bin index
    std::size_t peak_last = 0;    // inclusive bin index
    std::size_t accidental_bins = 0;
    /// One-sigma Poisson uncertainty of car (0 when undefined).
    double sigma = 0.0;
};

inline constexpr std::size_t kPeakWindowBins = 5;

/// Mean of the 5 bins centred on peak_center_bin over the mean of every bin
/// outside the peak window (and outside guard_bins on each side of it).
CarResult car_from_histogram(const CoincidenceHistogram& hist, std::size_t peak_center_bin,
                             std::size_t guard_bins = 0);

/// Bin with the largest count whose 5-bin window fits in the histogram.
std::size_t find_peak_bin(const CoincidenceHistogram& hist);

struct RateModel {
    double pair_rate = 0.0;            // pairs/s delivered to the fibers
    double noise_rate_signal = 0.0;    // uncorrelated photons/s at the signal detector input
    double noise_rate_idler = 0.0;
    double efficiency_signal = 1.0;
    double efficiency_idler = 1.0;
    double dark_rate_signal = 0.0;     // counts/s
    double dark_rate_idler = 0.0;
    double coincidence_window_s = 0.0; // width of the coincidence (peak) window

    void validate() const;
};

struct RatePrediction {
    double singles_signal = 0.0;
    double singles_idler = 0.0;
    double coincidence = 0.0;
    double accidental = 0.0;
    double car = 1.0;
};

RatePrediction predict_rates(const RateModel& model);

/// Uncorrelated noise rates (before detection) that reproduce target singles rates.
RateModel with_target_singles(RateModel model, double singles_signal, double singles_idler);

struct TimestampStreams {
    std::vector<double> signal;
    std::vector<double> idler;
};

struct SynthesisOptions {
    double idler_delay_s = 0.0;
    double jitter_sigma_s = 0.0;
};

/// Poisson pair events thinned per arm by the efficiencies, plus independent
/// Poisson noise and dark counts; sorted, deterministic for a fixed seed.
TimestampStreams synthesize_timestamps(const RateModel& model, double duration_s,
                                       std::uint64_t seed, const SynthesisOptions& options = {});

}  // namespace sfwm
