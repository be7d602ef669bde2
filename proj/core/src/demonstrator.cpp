#include "pour/signal/demonstrator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pour/errors.hpp"
#include "pour/parallel.hpp"
#include "pour/signal/filters.hpp"

namespace pour::signal {

namespace {

constexpr int kMaxAttempts = 25;
constexpr double kMinDurationS = 2.5;
constexpr double kMaxDurationS = 10.0;
constexpr double kHoldS = 1.5;
constexpr double kSpillLockS = 3.0; // pinned at the angle clamp this long => unreachable

enum class Phase { Forward, Backward, Hold };

struct Attempt {
    std::vector<double> theta;
    std::vector<double> force;
    double actual_ml = 0.0;
    double duration_s = 0.0;
    bool completed = false;
};

Attempt run_script(const DemoTask& task, const sim::FlowModel& flow,
                   const sim::SensorModel& sensor_model, const DemonstratorProfile& profile,
                   Rng& rng, std::uint64_t sensor_seed, const PhysicalConstants& c) {
    std::uniform_real_distribution<double> fwd(profile.forward_rate_min_dps,
                                               profile.forward_rate_max_dps);
    std::uniform_real_distribution<double> bwd(profile.backward_rate_min_dps,
                                               profile.backward_rate_max_dps);
    std::normal_distribution<double> anticipation(profile.anticipation_mean,
                                                  profile.anticipation_std);
    std::uniform_real_distribution<double> start_angle(0.0, 5.0);

    const double omega_fwd = fwd(rng);
    const double omega_bwd = bwd(rng);
    const double alpha = std::clamp(anticipation(rng), 0.5, 1.0);
    const double theta0 = start_angle(rng);

    sim::SimState plant = sim::make_sim(task.container, task.v_total_ml, theta0);
    sim::ForceSensor sensor(sensor_model, sensor_seed);
    StreamingForceFilter filter;
    std::normal_distribution<double> jitter(0.0, profile.noise_std_dps);

    const double f_target = volume_to_weight(task.v_2pour_requested_ml, c);
    const double theta_return = 0.4 * theta0;

    Attempt att;
    Phase phase = Phase::Forward;
    double f_init = 0.0;
    int hold_left = static_cast<int>(std::lround(kHoldS * c.sample_rate_hz));
    int pinned_steps = 0;
    const int max_steps = static_cast<int>(std::lround(kMaxDurationS * c.sample_rate_hz)) + 1;

    for (int t = 0; t < max_steps; ++t) {
        const double f_t = filter.push(sensor.read(plant.v_recv_ml, c));
        if (t == 0) f_init = f_t;
        att.theta.push_back(plant.theta_deg);
        att.force.push_back(f_t);

        double omega = 0.0;
        switch (phase) {
            case Phase::Forward:
                if (f_t - f_init >= alpha * f_target) {
                    phase = Phase::Backward;
                    omega = -omega_bwd + jitter(rng);
                } else if (f_t - f_init >= profile.decel_trigger_frac * alpha * f_target) {
                    omega = profile.decel_factor * omega_fwd + jitter(rng);
                } else {
                    omega = omega_fwd + jitter(rng);
                }
                break;
            case Phase::Backward:
                if (plant.theta_deg <= theta_return) {
                    phase = Phase::Hold;
                    omega = 0.0;
                } else {
                    omega = -omega_bwd + jitter(rng);
                }
                break;
            case Phase::Hold:
                omega = 0.0;
                --hold_left;
                break;
        }
        if (phase == Phase::Hold && hold_left <= 0) {
            att.completed = true;
            break;
        }

        if (phase == Phase::Forward && plant.theta_deg >= 89.0) {
            if (++pinned_steps > kSpillLockS * c.sample_rate_hz) {
                throw demo_failure_error("generate_demo: spill-lock, target unreachable for '" +
                                         task.container.name + "'");
            }
        }
        sim::step(plant, omega, flow, c);
    }

    att.actual_ml = plant.v_recv_ml;
    att.duration_s = static_cast<double>(att.theta.size() - 1) * c.dt_s;
    return att;
}

} // namespace

void DemonstratorProfile::validate() const {
    if (!(anticipation_mean > 0.0) || !(anticipation_mean < 1.0)) {
        throw validation_error("demonstrator: anticipation_mean must lie in (0,1)");
    }
    if (!(forward_rate_min_dps > 0.0) || !(forward_rate_max_dps >= forward_rate_min_dps) ||
        !(backward_rate_min_dps > 0.0) || !(backward_rate_max_dps >= backward_rate_min_dps)) {
        throw validation_error("demonstrator: rate ranges must be positive");
    }
    if (anticipation_std < 0.0 || noise_std_dps < 0.0) {
        throw validation_error("demonstrator: negative noise parameters");
    }
    if (!(decel_trigger_frac > 0.0) || decel_trigger_frac > 1.0 || !(decel_factor > 0.0) ||
        decel_factor > 1.0) {
        throw validation_error("demonstrator: deceleration parameters must lie in (0, 1]");
    }
}

DemoResult generate_demo(const DemoTask& task, const sim::FlowModel& flow,
                         const sim::SensorModel& sensor, const DemonstratorProfile& profile,
                         std::uint64_t seed, const PhysicalConstants& c) {
    profile.validate();
    if (!(task.v_total_ml > task.v_2pour_requested_ml) || !(task.v_2pour_requested_ml > 0.0)) {
        throw validation_error("generate_demo: requires v_total > requested v_2pour > 0");
    }
    Rng rng(derive_seed(seed, "demo-script"));
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Attempt att = run_script(task, flow, sensor, profile, rng,
                                 derive_seed(seed, "demo-sensor", attempt), c);
        if (!att.completed) continue;
        if (att.duration_s < kMinDurationS || att.duration_s > kMaxDurationS) continue;
        if (!(att.actual_ml > 0.0)) continue;

        DemoResult result;
        result.requested_ml = task.v_2pour_requested_ml;
        result.actual_ml = att.actual_ml;
        result.duration_s = att.duration_s;
        result.trial = make_trial(task.container, volume_to_weight(task.v_total_ml, c),
                                  volume_to_weight(att.actual_ml, c), std::move(att.theta),
                                  std::move(att.force), SourceTag::SyntheticDemo, c);
        return result;
    }
    throw demo_failure_error("generate_demo: no attempt landed in the duration band for '" +
                             task.container.name + "'");
}

DemoSet generate_demo_set(const std::vector<ContainerSpec>& containers, std::size_t count,
                          const sim::FlowModel& flow, const sim::SensorModel& sensor,
                          const DemonstratorProfile& profile, std::uint64_t root_seed,
                          unsigned threads, const PhysicalConstants& c) {
    if (containers.empty()) throw validation_error("generate_demo_set: no containers");
    DemoSet set;
    set.demos.resize(count);
    parallel_for(count, threads, [&](std::size_t i) {
        const ContainerSpec& container = containers[i % containers.size()];
        Rng task_rng = make_rng(root_seed, "demo-task", i);
        const SampledTask band = sample_task(container, task_rng);
        DemoTask task{container, band.v_total_ml, band.v_2pour_ml};
        set.demos[i] = generate_demo(task, flow, sensor, profile,
                                     derive_seed(root_seed, "demo", i), c);
    });
    std::vector<PourOutcome> outcomes;
    outcomes.reserve(count);
    for (const auto& d : set.demos) {
        outcomes.push_back({d.requested_ml, d.actual_ml, d.actual_ml - d.requested_ml});
    }
    set.stats = compute_error_stats(std::move(outcomes));
    return set;
}

} // namespace pour::signal
