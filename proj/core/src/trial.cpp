#include "pour/trial.hpp"

#include <cmath>

#include "pour/errors.hpp"

namespace pour {

std::string to_string(SourceTag tag) {
    switch (tag) {
        case SourceTag::HumanDemo: return "human-demo";
        case SourceTag::SyntheticDemo: return "synthetic-demo";
        case SourceTag::RobotPractice: return "robot-practice";
    }
    return "synthetic-demo";
}

SourceTag source_tag_from_string(const std::string& s) {
    if (s == "human-demo") return SourceTag::HumanDemo;
    if (s == "synthetic-demo") return SourceTag::SyntheticDemo;
    if (s == "robot-practice") return SourceTag::RobotPractice;
    throw validation_error("unknown source tag '" + s + "'");
}

void TrialRecord::validate() const {
    container.validate();
    if (!(f_total_lbf > f_2pour_lbf) || !(f_2pour_lbf > 0.0)) {
        throw validation_error("trial: requires f_total > f_2pour > 0");
    }
    const std::size_t t = theta_deg.size();
    if (t < 2) throw validation_error("trial: needs at least 2 samples");
    if (f_lbf.size() != t) throw validation_error("trial: theta/f length mismatch");
    if (omega_dps.size() != t - 1) throw validation_error("trial: omega length must be T-1");
    constexpr double kNoiseTol = 0.02; // lbf
    for (std::size_t i = 0; i + 1 < t; ++i) {
        if (!(f_lbf[i + 1] >= f_lbf[i] - kNoiseTol)) {
            throw validation_error("trial: filtered force decreases beyond sensor-noise tolerance");
        }
    }
    for (double v : theta_deg) {
        if (!std::isfinite(v)) throw validation_error("trial: non-finite angle");
    }
    for (double v : f_lbf) {
        if (!std::isfinite(v)) throw validation_error("trial: non-finite force");
    }
}

std::vector<double> angular_velocity_series(const std::vector<double>& theta_deg,
                                            const PhysicalConstants& c) {
    if (theta_deg.size() < 2) {
        throw insufficient_data_error("angular_velocity_series: need at least 2 samples");
    }
    std::vector<double> omega(theta_deg.size() - 1);
    for (std::size_t i = 0; i + 1 < theta_deg.size(); ++i) {
        omega[i] = (theta_deg[i + 1] - theta_deg[i]) * c.sample_rate_hz;
    }
    return omega;
}

TrialRecord make_trial(ContainerSpec container, double f_total_lbf, double f_2pour_lbf,
                       std::vector<double> theta_deg, std::vector<double> f_lbf,
                       SourceTag tag, const PhysicalConstants& c) {
    TrialRecord trial;
    trial.container = std::move(container);
    trial.f_total_lbf = f_total_lbf;
    trial.f_2pour_lbf = f_2pour_lbf;
    trial.omega_dps = angular_velocity_series(theta_deg, c);
    trial.theta_deg = std::move(theta_deg);
    trial.f_lbf = std::move(f_lbf);
    trial.source_tag = tag;
    trial.validate();
    return trial;
}

} // namespace pour
