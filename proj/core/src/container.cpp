#include "pour/container.hpp"

#include <numbers>

#include "pour/errors.hpp"

namespace pour {

void ContainerSpec::validate() const {
    if (!(height_mm > 0.0) || !(diameter_mm > 0.0)) {
        throw validation_error("container '" + name + "': height and diameter must be positive");
    }
}

double curvature(const ContainerSpec& spec) {
    if (!(spec.diameter_mm > 0.0)) {
        throw validation_error("curvature: non-positive diameter");
    }
    return 2.0 / spec.diameter_mm;
}

double capacity_ml(const ContainerSpec& spec) {
    spec.validate();
    const double r = spec.diameter_mm / 2.0;
    return std::numbers::pi * r * r * spec.height_mm / 1000.0; // mm^3 -> mL
}

} // namespace pour
