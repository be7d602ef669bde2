#pragma once

#include <Eigen/Core>
#include <vector>

#include "pour/trial.hpp"

namespace pour::signal {

inline constexpr int kFeatureDim = 6; // [theta, f, f_total, f_2pour, H, kappa]

/// Per-dimension z-score statistics, fitted on the training split only.
/// Input stats are pooled over every timestep of every training trial;
/// output stats cover all omega targets. Stds are floored at 1e-6.
struct NormalizerStats {
    Eigen::VectorXd input_mean;  // kFeatureDim
    Eigen::VectorXd input_std;   // kFeatureDim
    double output_mean = 0.0;
    double output_std = 1.0;

    Eigen::VectorXd normalize_input(const Eigen::VectorXd& raw) const;
    Eigen::VectorXd denormalize_input(const Eigen::VectorXd& z) const;
    double normalize_output(double omega_dps) const;
    double denormalize_output(double z) const;
};

/// Fits pooled mean/std (population) on a training set of >= 2 trials.
NormalizerStats fit_normalizer(const std::vector<TrialRecord>& training);

/// Raw (un-normalized) feature vector [theta(t), f(t), f_total, f_2pour, H, kappa]
/// at 0-based step t in [0, T-2]. Throws validation_error on out-of-range t.
Eigen::VectorXd raw_features(const TrialRecord& trial, std::size_t t);

/// Normalized feature vector at step t.
Eigen::VectorXd assemble_features(const TrialRecord& trial, std::size_t t,
                                  const NormalizerStats& stats);

/// Normalized inputs (kFeatureDim x T-1) and targets (T-1) for a whole trial.
struct EncodedTrial {
    Eigen::MatrixXd inputs;
    Eigen::VectorXd targets;
};

EncodedTrial encode_trial(const TrialRecord& trial, const NormalizerStats& stats);
std::vector<EncodedTrial> encode_dataset(const std::vector<TrialRecord>& trials,
                                         const NormalizerStats& stats);

} // namespace pour::signal
