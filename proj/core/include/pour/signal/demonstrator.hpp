#pragma once

#include <cstdint>
#include <vector>

#include "pour/container.hpp"
#include "pour/error_stats.hpp"
#include "pour/sim/plant.hpp"
#include "pour/sim/sensor.hpp"
#include "pour/task_band.hpp"
#include "pour/trial.hpp"

namespace pour::signal {

/// Scripted feedback pourer standing in for human demonstrations: tilt
/// forward at a sampled rate, begin the backward rotation once the measured
/// poured weight reaches an anticipation fraction of the requested target,
/// and hold still at the end. Velocity noise makes trials uneven.
struct DemonstratorProfile {
    double forward_rate_min_dps = 25.0;
    double forward_rate_max_dps = 45.0;
    double anticipation_mean = 0.92;
    double anticipation_std = 0.03;
    double backward_rate_min_dps = 30.0;
    double backward_rate_max_dps = 60.0;
    double noise_std_dps = 1.5;
    // Humans slow down near the goal: once the measured weight crosses
    // decel_trigger_frac of the anticipated target the forward rate drops to
    // decel_factor of its sampled value.
    double decel_trigger_frac = 0.5;
    double decel_factor = 0.15;

    void validate() const;
};

struct DemoTask {
    ContainerSpec container;
    double v_total_ml = 0.0;
    double v_2pour_requested_ml = 0.0;
};

struct DemoResult {
    TrialRecord trial; // f_2pour relabeled to the actual outcome
    double requested_ml = 0.0;
    double actual_ml = 0.0;
    double duration_s = 0.0;
};

/// Runs the scripted pourer against the simulated plant and records a trial
/// at 60 Hz through the training filter chain. Trials whose duration falls
/// outside [2.5, 10] s are rejected and regenerated with fresh rate samples.
/// Throws demo_failure_error when the target is unreachable (spill-lock) or
/// no attempt lands in the duration band.
DemoResult generate_demo(const DemoTask& task, const sim::FlowModel& flow,
                         const sim::SensorModel& sensor, const DemonstratorProfile& profile,
                         std::uint64_t seed, const PhysicalConstants& c = {});

struct DemoSet {
    std::vector<DemoResult> demos;
    ErrorStats stats; // |actual - requested| over the set
};

/// Generates `count` demonstrations round-robin over the given containers
/// with band-sampled fills and targets.
DemoSet generate_demo_set(const std::vector<ContainerSpec>& containers, std::size_t count,
                          const sim::FlowModel& flow, const sim::SensorModel& sensor,
                          const DemonstratorProfile& profile, std::uint64_t root_seed,
                          unsigned threads = 1, const PhysicalConstants& c = {});

} // namespace pour::signal
