#include "pour/sim/plant.hpp"

#include <algorithm>
#include <cmath>

#include "pour/errors.hpp"
#include "pour/numeric.hpp"
#include "pour/sim/geometry.hpp"

namespace pour::sim {

namespace {

constexpr double kThetaMaxDeg = 89.0;

} // namespace

void FlowModel::validate() const {
    if (!(lag_tau_s > 0.0) || !(max_flow_ml_per_s > 0.0) || !(settle_tau_s > 0.0)) {
        throw validation_error("flow model: all parameters must be positive");
    }
}

SimState make_sim(ContainerSpec container, double v_total_ml, double theta0_deg) {
    container.validate();
    if (!(v_total_ml > 0.0) || v_total_ml > capacity_ml(container)) {
        throw validation_error("make_sim: fill volume must lie in (0, capacity]");
    }
    if (!(theta0_deg >= 0.0) || theta0_deg > kThetaMaxDeg) {
        throw validation_error("make_sim: starting angle outside [0, 89] degrees");
    }
    SimState s;
    s.container = std::move(container);
    s.theta_deg = grid_round(theta0_deg);
    s.v_source_ml = grid_round(v_total_ml);
    return s;
}

void step(SimState& state, double omega_dps, const FlowModel& flow,
          const PhysicalConstants& c) {
    flow.validate();
    const double dt = c.dt_s;

    state.theta_deg = grid_round(std::clamp(state.theta_deg + omega_dps * dt, 0.0, kThetaMaxDeg));

    const double retained = max_retained_volume(state.container, state.theta_deg);
    const double excess = std::max(0.0, state.v_source_ml - retained);
    const double outflow_rate = std::min(excess / flow.lag_tau_s, flow.max_flow_ml_per_s);
    const double out = grid_round(std::min(outflow_rate * dt, excess));
    state.v_source_ml -= out;
    state.v_transit_ml += out;

    const double settle = grid_round(std::min(state.v_transit_ml * dt / flow.settle_tau_s,
                                              state.v_transit_ml));
    state.v_transit_ml -= settle;
    state.v_recv_ml += settle;

    state.t_s += dt;
}

} // namespace pour::sim
