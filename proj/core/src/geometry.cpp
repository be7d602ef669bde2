#include "pour/sim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pour/errors.hpp"

namespace pour::sim {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

} // namespace

double max_retained_volume(const ContainerSpec& container, double theta_deg) {
    container.validate();
    if (!(theta_deg >= 0.0) || !(theta_deg < 90.0)) {
        throw validation_error("max_retained_volume: theta must lie in [0, 90)");
    }
    const double r = container.diameter_mm / 2.0;
    const double h = container.height_mm;
    const double tan_t = std::tan(theta_deg * kDegToRad);

    double mm3 = 0.0;
    if (2.0 * r * tan_t <= h) {
        // Surface plane spans the full cross-section.
        mm3 = std::numbers::pi * r * r * (h - r * tan_t);
    } else {
        // Plane meets the base: cylindrical wedge over the chord x = a.
        // V = tan(theta) * Int_a^R (x - a) 2 sqrt(R^2 - x^2) dx
        const double a = r - h / tan_t;
        const double s = std::sqrt(std::max(0.0, r * r - a * a));
        const double wedge = (2.0 / 3.0) * s * s * s + a * a * s -
                             a * r * r * (std::numbers::pi / 2.0 - std::asin(std::clamp(a / r, -1.0, 1.0)));
        mm3 = tan_t * wedge;
    }
    return std::max(0.0, mm3) / 1000.0;
}

double oracle_max_retained_volume(const ContainerSpec& container, double theta_deg,
                                  int resolution) {
    container.validate();
    if (!(theta_deg >= 0.0) || !(theta_deg < 90.0)) {
        throw validation_error("oracle_max_retained_volume: theta must lie in [0, 90)");
    }
    if (resolution < 100) {
        throw validation_error("oracle_max_retained_volume: resolution must be >= 100");
    }
    const double r = container.diameter_mm / 2.0;
    const double h = container.height_mm;
    const double tan_t = std::tan(theta_deg * kDegToRad);

    // Liquid column height above base point x (axis frame): the free surface
    // through the low rim point (x = +R, z = H) has height H - (R - x) tan(theta).
    double mm3 = 0.0;
    const double dx = 2.0 * r / resolution;
    for (int k = 0; k < resolution; ++k) {
        const double x = -r + (k + 0.5) * dx;
        const double width = 2.0 * std::sqrt(std::max(0.0, r * r - x * x));
        const double column = std::clamp(h - (r - x) * tan_t, 0.0, h);
        mm3 += width * column * dx;
    }
    return mm3 / 1000.0;
}

} // namespace pour::sim
