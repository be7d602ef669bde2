#pragma once

namespace pour {

/// Fixed physical constants of the pipeline. Weight is sensed in lbf,
/// volume is reported in mL, everything runs on a 60 Hz clock.
struct PhysicalConstants {
    double water_density_g_per_ml = 0.997;
    double gravity_m_per_s2 = 9.80665;
    double lbf_to_newton = 4.4482216152605;
    double sample_rate_hz = 60.0;
    double dt_s = 1.0 / 60.0;
};

/// v = f / (rho * g), expressed in mL for f in lbf.
/// Throws validation_error for negative f.
double weight_to_volume(double f_lbf, const PhysicalConstants& c = {});

/// Inverse of weight_to_volume. Throws validation_error for negative volume.
double volume_to_weight(double v_ml, const PhysicalConstants& c = {});

} // namespace pour
