#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "pour/container.hpp"
#include "pour/control/termination.hpp"
#include "pour/net/checkpoint.hpp"
#include "pour/sim/plant.hpp"
#include "pour/sim/sensor.hpp"
#include "pour/trial.hpp"

namespace pour::control {

/// One pouring requirement: which container, how much it holds, how much to
/// pour. The seed drives the starting angle and the sensor stream.
struct PourTask {
    ContainerSpec container;
    double vol_total_ml = 0.0;
    double vol_2pour_ml = 0.0; // requested target
    std::uint64_t seed = 0;

    void validate() const;
};

struct ExecutorLimits {
    double omega_clamp_dps = 90.0;
    TerminationConfig termination;
    double settle_hold_s = 1.0; // zero-motion hold before the outcome is read
};

enum class Termination { Settled, Timeout };

/// Outcome of one closed-loop execution. The embedded trial is recorded at
/// 60 Hz with f_2pour relabeled to the actual outcome; pours whose outcome
/// is not a valid trial (nothing poured) leave `trial` empty.
struct PourResult {
    std::optional<TrialRecord> trial;
    double actual_ml = 0.0;
    double requested_ml = 0.0;
    double signed_error_ml = 0.0;
    double duration_s = 0.0;
    Termination terminated_by = Termination::Settled;
    double theta_start_deg = 0.0;
    // Trajectory landmarks for flow-lag reporting: first step the command
    // went negative, last step the received volume still increased.
    double t_first_backward_s = -1.0;
    double t_last_inflow_s = -1.0;
    // Optional trajectory dump rows (t_s, theta, omega_cmd, v_source, v_recv, f_meas).
    std::vector<std::array<double, 6>> trajectory;
};

/// Runs the learned model closed-loop at 60 Hz: plant angle and filtered
/// force feed the normalized feature vector, one LSTM step (dropout off,
/// state persistent across the trial) yields the de-normalized velocity,
/// clamped to the actuator limit and applied to the plant. After the
/// termination policy fires, the command is held at zero until the transit
/// settles, then the outcome is measured. Throws config_error when the
/// checkpoint's normalizer does not match the feature dimension.
PourResult run_closed_loop(const net::ModelCheckpoint& model, const PourTask& task,
                           const sim::FlowModel& flow, const sim::SensorModel& sensor,
                           const ExecutorLimits& limits = {}, bool record_trajectory = false,
                           const PhysicalConstants& c = {});

/// Switch-controller baseline: constant forward velocity until the measured
/// poured volume reaches the target, then constant backward velocity until
/// the angle returns to its start, then stop.
PourResult switch_controller(const PourTask& task, double omega_fwd_dps, double omega_back_dps,
                             const sim::FlowModel& flow, const sim::SensorModel& sensor,
                             const ExecutorLimits& limits = {}, bool record_trajectory = false,
                             const PhysicalConstants& c = {});

/// Replays a recorded trial open-loop through a fresh plant and returns the
/// final received volume; closed-loop results reproduce their actual_ml.
double replay_actual_ml(const TrialRecord& trial, const sim::FlowModel& flow,
                        const PhysicalConstants& c = {});

} // namespace pour::control
