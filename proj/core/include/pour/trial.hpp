#pragma once

#include <string>
#include <vector>

#include "pour/container.hpp"
#include "pour/units.hpp"

namespace pour {

enum class SourceTag {
    HumanDemo,
    SyntheticDemo,
    RobotPractice,
};

std::string to_string(SourceTag tag);
SourceTag source_tag_from_string(const std::string& s);

/// One pouring sequence: the unit of training data.
///
/// theta_deg and f_lbf have length T >= 2 (f already filtered); omega_dps has
/// length T-1 and is always derived from theta. f_2pour_lbf carries the
/// actual poured outcome, not the requested target.
struct TrialRecord {
    ContainerSpec container;
    double f_total_lbf = 0.0;
    double f_2pour_lbf = 0.0;
    std::vector<double> theta_deg;
    std::vector<double> f_lbf;
    std::vector<double> omega_dps;
    SourceTag source_tag = SourceTag::SyntheticDemo;

    std::size_t length() const { return theta_deg.size(); }

    /// Throws validation_error on any broken invariant:
    /// f_total > f_2pour > 0, T >= 2, series lengths consistent,
    /// f non-decreasing up to the 0.02 lbf sensor-noise tolerance.
    void validate() const;
};

/// omega(t) = (theta(t+1) - theta(t)) * f_s, output length T-1.
/// Throws insufficient_data_error when the input has fewer than 2 samples.
std::vector<double> angular_velocity_series(const std::vector<double>& theta_deg,
                                            const PhysicalConstants& c = {});

/// Builds a TrialRecord from recorded theta/f series, deriving omega and
/// validating all invariants.
TrialRecord make_trial(ContainerSpec container, double f_total_lbf, double f_2pour_lbf,
                       std::vector<double> theta_deg, std::vector<double> f_lbf,
                       SourceTag tag, const PhysicalConstants& c = {});

} // namespace pour
