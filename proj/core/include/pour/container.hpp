#pragma once

#include <string>

namespace pour {

/// Geometry of a cylindrical source container. Curvature is always derived
/// from the diameter, never stored.
struct ContainerSpec {
    std::string name;
    double height_mm = 0.0;
    double diameter_mm = 0.0;

    /// Throws validation_error unless height and diameter are positive.
    void validate() const;
};

/// kappa = 2 / D, in 1/mm. Throws validation_error for non-positive diameter.
double curvature(const ContainerSpec& spec);

/// Full cylinder capacity pi * R^2 * H, in mL.
double capacity_ml(const ContainerSpec& spec);

} // namespace pour
