#pragma once

#include <Eigen/Core>

#include "pour/net/checkpoint.hpp"
#include "pour/signal/normalizer.hpp"

namespace pour::testing {

/// Zero-weight checkpoint whose de-normalized output is constantly
/// `omega_dps` (the head emits 0, the output normalizer shifts it).
inline net::ModelCheckpoint constant_velocity_model(double omega_dps, int hidden = 8) {
    net::ModelCheckpoint ckpt;
    ckpt.params = net::NetParams::zeros(hidden, signal::kFeatureDim);
    ckpt.normalizer.input_mean = Eigen::VectorXd::Zero(signal::kFeatureDim);
    ckpt.normalizer.input_std = Eigen::VectorXd::Ones(signal::kFeatureDim);
    ckpt.normalizer.output_mean = omega_dps;
    ckpt.normalizer.output_std = 1.0;
    return ckpt;
}

} // namespace pour::testing
