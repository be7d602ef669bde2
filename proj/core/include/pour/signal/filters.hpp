#pragma once

#include <cstddef>
#include <vector>

namespace pour::signal {

/// Index-map downsampling of a 1 kHz force recording to 60 Hz: output k reads
/// input round(k * 1000 / 60). Throws insufficient_data_error on empty input.
std::vector<double> downsample_force(const std::vector<double>& f_raw_1khz,
                                     double in_rate_hz = 1000.0, double out_rate_hz = 60.0);

/// Median of the last min(window, t) samples of the prefix. Causal: never
/// reads past the end. Even counts take the mean of the middle pair.
double causal_median_filter(const std::vector<double>& prefix, int window = 5);

/// One-sided truncated Gaussian over the trailing min(t, 4*sigma + 1)
/// samples, weights exp(-i^2 / (2 sigma^2)) renormalized to sum 1.
double causal_gaussian_filter(const std::vector<double>& prefix, double sigma = 2.0);

/// Streaming median(5) -> Gaussian(sigma = 2) chain, the same filtering the
/// training data went through, for online use inside the executor.
class StreamingForceFilter {
public:
    explicit StreamingForceFilter(int median_window = 5, double gaussian_sigma = 2.0);

    /// Feeds one raw sample, returns the filtered value at this step.
    double push(double raw);

    void reset();

private:
    int median_window_;
    double sigma_;
    std::size_t gauss_window_;
    std::vector<double> raw_tail_;    // last median_window_ raw samples
    std::vector<double> median_tail_; // last gauss_window_ median outputs
    std::vector<double> weights_;     // exp(-i^2 / (2 sigma^2)), i = 0..window-1
};

} // namespace pour::signal
