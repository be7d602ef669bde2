#include <doctest.h>

#include <cmath>

#include "pour/control/executor.hpp"
#include "pour/errors.hpp"
#include "test_support.hpp"

using namespace pour;
using namespace pour::control;

namespace {

const ContainerSpec kCup{"cup-d", 110.0, 74.0};

PourTask task_of(double total, double requested, std::uint64_t seed) {
    return {kCup, total, requested, seed};
}

sim::SensorModel quiet_sensor() {
    sim::SensorModel s;
    s.white_noise_std_lbf = 0.0;
    s.drift_walk_std_lbf = 0.0;
    return s;
}

} // namespace

TEST_CASE("zero-capability model: timeout with nothing poured") {
    const auto model = testing::constant_velocity_model(0.0);
    const auto result = run_closed_loop(model, task_of(300.0, 120.0, 4), {}, quiet_sensor());
    CHECK(result.terminated_by == Termination::Timeout);
    CHECK(result.actual_ml == 0.0);
    CHECK(result.signed_error_ml == -120.0);
    CHECK_FALSE(result.trial.has_value());
    CHECK(result.t_first_backward_s < 0.0);
}

TEST_CASE("velocity clamp: commanded |omega| never exceeds the limit") {
    const auto model = testing::constant_velocity_model(500.0); // wants 500 deg/s
    const auto result =
        run_closed_loop(model, task_of(300.0, 120.0, 5), {}, quiet_sensor(), {}, true);
    REQUIRE(!result.trajectory.empty());
    for (const auto& row : result.trajectory) {
        CHECK(std::abs(row[2]) <= 90.0);
    }
    // and the plant actually saw at most the clamp: theta rises <= 1.5 deg/step
    REQUIRE(result.trial.has_value());
    for (double w : result.trial->omega_dps) CHECK(std::abs(w) <= 90.0 + 1e-9);
}

TEST_CASE("identical tasks with identical seeds give identical results") {
    const auto model = testing::constant_velocity_model(30.0);
    sim::SensorModel noisy; // default noise on
    const auto a = run_closed_loop(model, task_of(300.0, 120.0, 6), {}, noisy);
    const auto b = run_closed_loop(model, task_of(300.0, 120.0, 6), {}, noisy);
    CHECK(a.actual_ml == b.actual_ml);
    CHECK(a.duration_s == b.duration_s);
    REQUIRE(a.trial.has_value());
    REQUIRE(b.trial.has_value());
    CHECK(a.trial->theta_deg == b.trial->theta_deg);
    CHECK(a.trial->f_lbf == b.trial->f_lbf);
}

TEST_CASE("recorded trial replays to the same outcome") {
    sim::FlowModel flow;
    const auto result =
        switch_controller(task_of(300.0, 120.0, 7), 20.0, -30.0, flow, quiet_sensor());
    REQUIRE(result.trial.has_value());
    CHECK_NOTHROW(result.trial->validate());
    const double replayed = replay_actual_ml(*result.trial, flow);
    CHECK(std::abs(replayed - result.actual_ml) < 1e-6);
}

TEST_CASE("switch controller with lag always over-pours (zero noise)") {
    sim::FlowModel flow; // default lag 0.15 s
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
        const auto result =
            switch_controller(task_of(320.0, 140.0, seed), 20.0, -30.0, flow, quiet_sensor());
        CHECK(result.signed_error_ml >= 0.0);
        CHECK(result.terminated_by == Termination::Settled);
    }
}

TEST_CASE("fast switch is less accurate than slow switch") {
    sim::FlowModel flow;
    double fast_err = 0.0, slow_err = 0.0;
    for (std::uint64_t seed : {21ull, 22ull, 23ull, 24ull, 25ull}) {
        fast_err += std::abs(
            switch_controller(task_of(320.0, 130.0, seed), 20.0, -30.0, flow, quiet_sensor())
                .signed_error_ml);
        slow_err += std::abs(
            switch_controller(task_of(320.0, 130.0, seed), 5.0, -7.5, flow, quiet_sensor())
                .signed_error_ml);
    }
    CHECK(slow_err < fast_err);
}

TEST_CASE("zero-lag switch lands within a few mL (filter group delay)") {
    sim::FlowModel flow;
    flow.lag_tau_s = 1e-9;
    flow.settle_tau_s = 1e-9;
    const auto result =
        switch_controller(task_of(320.0, 140.0, 31), 5.0, -7.5, flow, quiet_sensor());
    CHECK(result.signed_error_ml >= 0.0);
    CHECK(result.signed_error_ml < 5.0);
}

TEST_CASE("flow lag: volume keeps rising after the backward rotation starts") {
    sim::FlowModel flow;
    const auto result =
        switch_controller(task_of(320.0, 140.0, 41), 20.0, -30.0, flow, quiet_sensor());
    REQUIRE(result.t_first_backward_s > 0.0);
    REQUIRE(result.t_last_inflow_s > 0.0);
    CHECK(result.t_last_inflow_s > result.t_first_backward_s);
}

TEST_CASE("bad inputs are rejected") {
    const auto model = testing::constant_velocity_model(20.0);
    CHECK_THROWS_AS(run_closed_loop(model, task_of(100.0, 150.0, 1), {}, quiet_sensor()),
                    validation_error);
    CHECK_THROWS_AS(run_closed_loop(model, task_of(5000.0, 100.0, 1), {}, quiet_sensor()),
                    validation_error);
    CHECK_THROWS_AS(
        switch_controller(task_of(300.0, 100.0, 1), -5.0, -10.0, {}, quiet_sensor()),
        validation_error);
    auto wrong_dim = testing::constant_velocity_model(20.0);
    wrong_dim.params = net::NetParams::zeros(8, 4); // not the 6-feature input
    wrong_dim.normalizer.input_mean = Eigen::VectorXd::Zero(4);
    wrong_dim.normalizer.input_std = Eigen::VectorXd::Ones(4);
    CHECK_THROWS_AS(run_closed_loop(wrong_dim, task_of(300.0, 100.0, 1), {}, quiet_sensor()),
                    config_error);
}
