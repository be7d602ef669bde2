#include "pour/sim/sensor.hpp"

#include <algorithm>
#include <random>

namespace pour::sim {

ForceSensor::ForceSensor(SensorModel model, std::uint64_t seed)
    : model_(model), rng_(seed) {}

double ForceSensor::read(double v_recv_ml, const PhysicalConstants& c) {
    if (model_.drift_walk_std_lbf > 0.0) {
        std::normal_distribution<double> walk(0.0, model_.drift_walk_std_lbf);
        drift_lbf_ = std::clamp(drift_lbf_ + walk(rng_),
                                -model_.drift_bound_lbf, model_.drift_bound_lbf);
    }
    double noise = 0.0;
    if (model_.white_noise_std_lbf > 0.0) {
        std::normal_distribution<double> white(0.0, model_.white_noise_std_lbf);
        noise = white(rng_);
    }
    return volume_to_weight(v_recv_ml, c) + drift_lbf_ + noise + model_.bias_lbf;
}

} // namespace pour::sim
