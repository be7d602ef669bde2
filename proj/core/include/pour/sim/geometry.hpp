#pragma once

#include "pour/container.hpp"

namespace pour::sim {

/// Volume (mL) a cylinder retains when tilted by theta degrees from upright,
/// with the liquid surface horizontal through the lowest rim point.
///
/// Two regimes: while the surface plane still crosses the whole cross-section
/// (2R tan(theta) <= H) the volume is pi R^2 (H - R tan(theta)); once the
/// plane reaches the base the remaining liquid is a cylindrical wedge.
/// Monotone non-increasing in theta; equals full capacity at theta = 0 and
/// tends to 0 as theta -> 90.
///
/// Throws validation_error for theta outside [0, 90).
double max_retained_volume(const ContainerSpec& container, double theta_deg);

/// Brute-force check of max_retained_volume: midpoint quadrature of the
/// clipped liquid column over strips of the base disk. Kept free of any code
/// shared with the closed form. resolution = number of strips, >= 100.
double oracle_max_retained_volume(const ContainerSpec& container, double theta_deg,
                                  int resolution = 2000);

} // namespace pour::sim
