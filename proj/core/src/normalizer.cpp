#include "pour/signal/normalizer.hpp"

#include <cmath>

#include "pour/errors.hpp"

namespace pour::signal {

namespace {

constexpr double kStdFloor = 1e-6;

} // namespace

Eigen::VectorXd NormalizerStats::normalize_input(const Eigen::VectorXd& raw) const {
    return (raw - input_mean).cwiseQuotient(input_std);
}

Eigen::VectorXd NormalizerStats::denormalize_input(const Eigen::VectorXd& z) const {
    return z.cwiseProduct(input_std) + input_mean;
}

double NormalizerStats::normalize_output(double omega_dps) const {
    return (omega_dps - output_mean) / output_std;
}

double NormalizerStats::denormalize_output(double z) const {
    return z * output_std + output_mean;
}

NormalizerStats fit_normalizer(const std::vector<TrialRecord>& training) {
    if (training.size() < 2) {
        throw insufficient_data_error("fit_normalizer: need at least 2 trials");
    }
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(kFeatureDim);
    Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(kFeatureDim);
    double out_sum = 0.0, out_sum_sq = 0.0;
    std::size_t count = 0;
    for (const auto& trial : training) {
        for (std::size_t t = 0; t + 1 < trial.length(); ++t) {
            const Eigen::VectorXd x = raw_features(trial, t);
            sum += x;
            sum_sq += x.cwiseProduct(x);
            out_sum += trial.omega_dps[t];
            out_sum_sq += trial.omega_dps[t] * trial.omega_dps[t];
            ++count;
        }
    }
    const double n = static_cast<double>(count);
    NormalizerStats stats;
    stats.input_mean = sum / n;
    Eigen::VectorXd var = sum_sq / n - stats.input_mean.cwiseProduct(stats.input_mean);
    stats.input_std = var.cwiseMax(0.0).cwiseSqrt().cwiseMax(kStdFloor);
    stats.output_mean = out_sum / n;
    const double out_var = std::max(0.0, out_sum_sq / n - stats.output_mean * stats.output_mean);
    stats.output_std = std::max(std::sqrt(out_var), kStdFloor);
    return stats;
}

Eigen::VectorXd raw_features(const TrialRecord& trial, std::size_t t) {
    if (t + 1 >= trial.length()) {
        throw validation_error("raw_features: step index out of range");
    }
    Eigen::VectorXd x(kFeatureDim);
    x << trial.theta_deg[t], trial.f_lbf[t], trial.f_total_lbf, trial.f_2pour_lbf,
        trial.container.height_mm, curvature(trial.container);
    return x;
}

Eigen::VectorXd assemble_features(const TrialRecord& trial, std::size_t t,
                                  const NormalizerStats& stats) {
    return stats.normalize_input(raw_features(trial, t));
}

EncodedTrial encode_trial(const TrialRecord& trial, const NormalizerStats& stats) {
    const std::size_t steps = trial.length() - 1;
    EncodedTrial e;
    e.inputs.resize(kFeatureDim, static_cast<Eigen::Index>(steps));
    e.targets.resize(static_cast<Eigen::Index>(steps));
    for (std::size_t t = 0; t < steps; ++t) {
        e.inputs.col(static_cast<Eigen::Index>(t)) = assemble_features(trial, t, stats);
        e.targets[static_cast<Eigen::Index>(t)] = stats.normalize_output(trial.omega_dps[t]);
    }
    return e;
}

std::vector<EncodedTrial> encode_dataset(const std::vector<TrialRecord>& trials,
                                         const NormalizerStats& stats) {
    std::vector<EncodedTrial> out;
    out.reserve(trials.size());
    for (const auto& trial : trials) out.push_back(encode_trial(trial, stats));
    return out;
}

} // namespace pour::signal
