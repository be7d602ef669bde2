#include "pour/control/termination.hpp"

#include <algorithm>
#include <cmath>

namespace pour::control {

TerminationPolicy::TerminationPolicy(double theta_start_deg, TerminationConfig config)
    : config_(config), theta_start_deg_(theta_start_deg), max_theta_deg_(theta_start_deg),
      quiet_needed_(static_cast<int>(std::lround(config.quiet_window_s * 60.0))) {}

Decision TerminationPolicy::push(double theta_deg, double omega_cmd_dps, double t_s) {
    max_theta_deg_ = std::max(max_theta_deg_, theta_deg);
    if (std::abs(omega_cmd_dps) < config_.quiet_omega_dps) {
        ++quiet_steps_;
    } else {
        quiet_steps_ = 0;
    }
    if (t_s >= config_.timeout_s) return Decision::Timeout;
    const bool peaked = max_theta_deg_ >= config_.min_peak_theta_deg;
    const bool returned = theta_deg <= theta_start_deg_ + config_.return_band_deg;
    const bool quiet = quiet_steps_ >= quiet_needed_;
    if (peaked && returned && quiet) return Decision::Settled;
    return Decision::Continue;
}

} // namespace pour::control
