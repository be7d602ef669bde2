#pragma once

#include <cstdint>

#include "pour/rng.hpp"
#include "pour/units.hpp"

namespace pour::sim {

/// Force sensor defects: white noise, a bounded random-walk drift and a
/// static bias, all in lbf.
struct SensorModel {
    double white_noise_std_lbf = 0.002;
    double drift_walk_std_lbf = 0.0004;
    double drift_bound_lbf = 0.01;
    double bias_lbf = 0.0;
};

/// Stateful sensor under the receiving container. Deterministic under a
/// fixed seed; drift is clamped to +/- drift_bound at every step.
class ForceSensor {
public:
    ForceSensor(SensorModel model, std::uint64_t seed);

    /// Raw reading for the given received volume.
    double read(double v_recv_ml, const PhysicalConstants& c = {});

    double drift_lbf() const { return drift_lbf_; }

private:
    SensorModel model_;
    Rng rng_;
    double drift_lbf_ = 0.0;
};

} // namespace pour::sim
