#include "pour/signal/filters.hpp"

#include <algorithm>
#include <cmath>

#include "pour/errors.hpp"

namespace pour::signal {

std::vector<double> downsample_force(const std::vector<double>& f_raw_1khz,
                                     double in_rate_hz, double out_rate_hz) {
    if (f_raw_1khz.empty()) throw insufficient_data_error("downsample_force: empty input");
    const double ratio = in_rate_hz / out_rate_hz;
    const std::size_t n_out =
        static_cast<std::size_t>(std::floor((f_raw_1khz.size() - 1) / ratio)) + 1;
    std::vector<double> out(n_out);
    for (std::size_t k = 0; k < n_out; ++k) {
        auto idx = static_cast<std::size_t>(std::llround(k * ratio));
        idx = std::min(idx, f_raw_1khz.size() - 1);
        out[k] = f_raw_1khz[idx];
    }
    return out;
}

double causal_median_filter(const std::vector<double>& prefix, int window) {
    if (prefix.empty()) throw insufficient_data_error("causal_median_filter: empty prefix");
    const std::size_t n = std::min<std::size_t>(window, prefix.size());
    std::vector<double> tail(prefix.end() - n, prefix.end());
    std::sort(tail.begin(), tail.end());
    if (n % 2 == 1) return tail[n / 2];
    return 0.5 * (tail[n / 2 - 1] + tail[n / 2]);
}

double causal_gaussian_filter(const std::vector<double>& prefix, double sigma) {
    if (prefix.empty()) throw insufficient_data_error("causal_gaussian_filter: empty prefix");
    const auto span = static_cast<std::size_t>(std::floor(4.0 * sigma)); // i = 0..span
    const std::size_t n = std::min(span + 1, prefix.size());
    double acc = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = std::exp(-static_cast<double>(i * i) / (2.0 * sigma * sigma));
        acc += w * prefix[prefix.size() - 1 - i];
        norm += w;
    }
    return acc / norm;
}

StreamingForceFilter::StreamingForceFilter(int median_window, double gaussian_sigma)
    : median_window_(median_window), sigma_(gaussian_sigma),
      gauss_window_(static_cast<std::size_t>(std::floor(4.0 * gaussian_sigma)) + 1) {
    weights_.resize(gauss_window_);
    for (std::size_t i = 0; i < gauss_window_; ++i) {
        weights_[i] = std::exp(-static_cast<double>(i * i) / (2.0 * sigma_ * sigma_));
    }
}

double StreamingForceFilter::push(double raw) {
    raw_tail_.push_back(raw);
    if (raw_tail_.size() > static_cast<std::size_t>(median_window_)) {
        raw_tail_.erase(raw_tail_.begin());
    }
    std::vector<double> sorted = raw_tail_;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double med = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    median_tail_.push_back(med);
    if (median_tail_.size() > gauss_window_) {
        median_tail_.erase(median_tail_.begin());
    }
    double acc = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < median_tail_.size(); ++i) {
        acc += weights_[i] * median_tail_[median_tail_.size() - 1 - i];
        norm += weights_[i];
    }
    return acc / norm;
}

void StreamingForceFilter::reset() {
    raw_tail_.clear();
    median_tail_.clear();
}

} // namespace pour::signal
