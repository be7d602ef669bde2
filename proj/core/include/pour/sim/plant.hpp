#pragma once

#include "pour/container.hpp"
#include "pour/units.hpp"

namespace pour::sim {

/// First-order outflow dynamics of the plant. lag_tau_s delays outflow so
/// liquid keeps arriving after the backward rotation begins; poured liquid
/// spends settle_tau_s in transit before it registers in the receiver.
struct FlowModel {
    double lag_tau_s = 0.15;
    double max_flow_ml_per_s = 400.0;
    double settle_tau_s = 0.10;

    void validate() const;
};

/// The simulated pouring plant. All volumes live on the 2^-30 mL grid, so
/// v_source + v_transit + v_recv + spilled stays bitwise equal to the
/// initial fill over any trajectory.
struct SimState {
    ContainerSpec container;
    double theta_deg = 0.0;
    double v_source_ml = 0.0;
    double v_transit_ml = 0.0;
    double v_recv_ml = 0.0;
    double spilled_ml = 0.0;
    double t_s = 0.0;

    double total_ml() const { return v_source_ml + v_transit_ml + v_recv_ml + spilled_ml; }
};

/// Initializes a plant with the source filled to v_total_ml (grid-rounded)
/// and an empty receiver. Throws validation_error when the fill exceeds
/// capacity or the starting angle is outside [0, 89].
SimState make_sim(ContainerSpec container, double v_total_ml, double theta0_deg = 0.0);

/// One 60 Hz step: integrate the commanded angular velocity (theta clamped to
/// [0, 89] degrees), move the excess over the retainable volume from source
/// to transit through the first-order lag, and drain transit into the
/// receiver. Deterministic; sensor randomness lives in read_force only.
void step(SimState& state, double omega_dps, const FlowModel& flow,
          const PhysicalConstants& c = {});

} // namespace pour::sim
