#include "pour/control/executor.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pour/errors.hpp"
#include "pour/net/forward.hpp"
#include "pour/rng.hpp"
#include "pour/signal/filters.hpp"
#include "pour/signal/normalizer.hpp"

namespace pour::control {

namespace {

struct RecordingState {
    std::vector<double> theta;
    std::vector<double> force;
    std::vector<std::array<double, 6>> trajectory;
    bool record_trajectory = false;
};

/// Shared closed-loop skeleton: `policy(theta, f, t_s)` returns the commanded
/// velocity while running; `done(theta, omega, t_s)` reports whether the
/// active phase has finished (Settled or Timeout). After that the command
/// holds at zero so the transit settles before the outcome is read.
template <class PolicyFn, class DoneFn>
PourResult drive(const PourTask& task, const sim::FlowModel& flow,
                 const sim::SensorModel& sensor_model, const ExecutorLimits& limits,
                 bool record_trajectory, const PhysicalConstants& c, PolicyFn&& policy,
                 DoneFn&& done) {
    task.validate();
    flow.validate();

    Rng start_rng = make_rng(task.seed, "start-angle");
    std::uniform_real_distribution<double> start(0.0, 5.0);
    const double theta0 = start(start_rng);

    sim::SimState plant = sim::make_sim(task.container, task.vol_total_ml, theta0);
    sim::ForceSensor sensor(sensor_model, derive_seed(task.seed, "sensor"));
    signal::StreamingForceFilter filter;

    PourResult result;
    result.requested_ml = task.vol_2pour_ml;
    result.theta_start_deg = theta0;
    result.terminated_by = Termination::Timeout;
    result.duration_s = limits.termination.timeout_s;

    RecordingState rec;
    rec.record_trajectory = record_trajectory;

    const double v_recv_init = plant.v_recv_ml;
    double v_recv_prev = plant.v_recv_ml;
    bool holding = false;
    int hold_left = static_cast<int>(std::lround(limits.settle_hold_s * c.sample_rate_hz));
    const int max_steps = static_cast<int>(
        std::lround((limits.termination.timeout_s + limits.settle_hold_s) * c.sample_rate_hz)) + 8;

    for (int t = 0; t < max_steps; ++t) {
        const double t_s = static_cast<double>(t) * c.dt_s;
        const double theta_t = plant.theta_deg;
        const double f_t = filter.push(sensor.read(plant.v_recv_ml, c));
        rec.theta.push_back(theta_t);
        rec.force.push_back(f_t);

        double omega = 0.0;
        if (!holding) {
            omega = std::clamp(policy(theta_t, f_t, t_s), -limits.omega_clamp_dps,
                               limits.omega_clamp_dps);
            if (omega < 0.0 && result.t_first_backward_s < 0.0) {
                result.t_first_backward_s = t_s;
            }
            const Decision decision = done(theta_t, omega, t_s);
            if (decision != Decision::Continue) {
                result.duration_s = t_s;
                result.terminated_by =
                    decision == Decision::Settled ? Termination::Settled : Termination::Timeout;
                holding = true;
                omega = 0.0;
            }
        }
        if (rec.record_trajectory) {
            rec.trajectory.push_back(
                {t_s, theta_t, omega, plant.v_source_ml, plant.v_recv_ml, f_t});
        }
        if (holding && hold_left <= 0) break;
        if (holding) --hold_left;

        sim::step(plant, omega, flow, c);
        if (plant.v_recv_ml > v_recv_prev) {
            result.t_last_inflow_s = static_cast<double>(t + 1) * c.dt_s;
        }
        v_recv_prev = plant.v_recv_ml;
    }

    result.actual_ml = plant.v_recv_ml - v_recv_init;
    result.signed_error_ml = result.actual_ml - result.requested_ml;
    result.trajectory = std::move(rec.trajectory);
    if (result.actual_ml > 0.0 && result.actual_ml < task.vol_total_ml) {
        try {
            result.trial = make_trial(task.container, volume_to_weight(task.vol_total_ml, c),
                                      volume_to_weight(result.actual_ml, c),
                                      std::move(rec.theta), std::move(rec.force),
                                      SourceTag::RobotPractice, c);
        } catch (const error&) {
            result.trial.reset(); // degenerate pour, keep the outcome numbers only
        }
    }
    return result;
}

} // namespace

void PourTask::validate() const {
    container.validate();
    if (!(vol_total_ml > vol_2pour_ml) || !(vol_2pour_ml > 0.0)) {
        throw validation_error("pour task: requires vol_total > vol_2pour > 0");
    }
    if (vol_total_ml > capacity_ml(container)) {
        throw validation_error("pour task: fill exceeds container capacity");
    }
}

PourResult run_closed_loop(const net::ModelCheckpoint& model, const PourTask& task,
                           const sim::FlowModel& flow, const sim::SensorModel& sensor,
                           const ExecutorLimits& limits, bool record_trajectory,
                           const PhysicalConstants& c) {
    model.validate();
    if (model.normalizer.input_mean.size() != signal::kFeatureDim ||
        model.params.input_dim() != signal::kFeatureDim) {
        throw config_error("run_closed_loop: checkpoint does not take the 6-feature input");
    }

    net::LstmStepper stepper(model.params);
    const double f_total = volume_to_weight(task.vol_total_ml, c);
    const double f_target = volume_to_weight(task.vol_2pour_ml, c);
    const double height = task.container.height_mm;
    const double kappa = curvature(task.container);

    TerminationPolicy policy(0.0, limits.termination); // start angle patched below
    bool policy_ready = false;
    Eigen::VectorXd raw(signal::kFeatureDim);

    return drive(
        task, flow, sensor, limits, record_trajectory, c,
        [&](double theta_t, double f_t, double) {
            raw << theta_t, f_t, f_total, f_target, height, kappa;
            const double z = stepper.step(model.normalizer.normalize_input(raw));
            return model.normalizer.denormalize_output(z);
        },
        [&](double theta_t, double omega, double t_s) {
            if (!policy_ready) {
                policy = TerminationPolicy(theta_t, limits.termination);
                policy_ready = true;
            }
            return policy.push(theta_t, omega, t_s);
        });
}

PourResult switch_controller(const PourTask& task, double omega_fwd_dps, double omega_back_dps,
                             const sim::FlowModel& flow, const sim::SensorModel& sensor,
                             const ExecutorLimits& limits, bool record_trajectory,
                             const PhysicalConstants& c) {
    if (!(omega_fwd_dps > 0.0) || !(omega_back_dps < 0.0)) {
        throw validation_error("switch_controller: needs omega_fwd > 0 and omega_back < 0");
    }
    bool reached_target = false;
    bool returned = false;
    bool have_f0 = false;
    double f0 = 0.0;
    double theta_start = -1.0;

    return drive(
        task, flow, sensor, limits, record_trajectory, c,
        [&](double theta_t, double f_t, double) {
            if (theta_start < 0.0) theta_start = theta_t;
            if (!have_f0) {
                f0 = f_t;
                have_f0 = true;
            }
            if (!reached_target) {
                const double poured_ml = weight_to_volume(std::max(0.0, f_t - f0), c);
                if (poured_ml >= task.vol_2pour_ml) {
                    reached_target = true;
                } else {
                    return omega_fwd_dps;
                }
            }
            if (theta_t <= theta_start) returned = true;
            return returned ? 0.0 : omega_back_dps;
        },
        [&](double, double, double t_s) {
            if (reached_target && returned) return Decision::Settled;
            if (t_s >= limits.termination.timeout_s) return Decision::Timeout;
            return Decision::Continue;
        });
}

double replay_actual_ml(const TrialRecord& trial, const sim::FlowModel& flow,
                        const PhysicalConstants& c) {
    trial.validate();
    sim::SimState plant = sim::make_sim(trial.container, weight_to_volume(trial.f_total_lbf, c),
                                        trial.theta_deg.front());
    for (double omega : trial.omega_dps) sim::step(plant, omega, flow, c);
    return plant.v_recv_ml;
}

} // namespace pour::control
