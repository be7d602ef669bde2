#pragma once

namespace pour::control {

enum class Decision { Continue, Settled, Timeout };

/// Stop criterion of a closed-loop pour: settled once the container has
/// actually tilted (max theta over the trial >= min_peak), returned close to
/// its starting angle and the commanded velocity has stayed near zero for a
/// short window; hard timeout otherwise. All thresholds configurable.
struct TerminationConfig {
    double min_peak_theta_deg = 15.0;
    double return_band_deg = 2.0;
    double quiet_omega_dps = 0.5;
    double quiet_window_s = 0.5;
    double timeout_s = 15.0;
};

class TerminationPolicy {
public:
    TerminationPolicy(double theta_start_deg, TerminationConfig config = {});

    /// Feeds this step's plant angle and commanded velocity; returns the
    /// decision for the trajectory so far.
    Decision push(double theta_deg, double omega_cmd_dps, double t_s);

private:
    TerminationConfig config_;
    double theta_start_deg_;
    double max_theta_deg_;
    int quiet_steps_ = 0;
    int quiet_needed_;
};

} // namespace pour::control
