#include "pour/units.hpp"

#include "pour/errors.hpp"

namespace pour {

namespace {

// mL poured per lbf sensed: (lbf -> N -> kg -> g) / (g/mL)
double ml_per_lbf(const PhysicalConstants& c) {
    const double grams_per_lbf = c.lbf_to_newton / c.gravity_m_per_s2 * 1000.0;
    return grams_per_lbf / c.water_density_g_per_ml;
}

} // namespace

double weight_to_volume(double f_lbf, const PhysicalConstants& c) {
    if (f_lbf < 0.0) throw validation_error("weight_to_volume: negative force reading");
    return f_lbf * ml_per_lbf(c);
}

double volume_to_weight(double v_ml, const PhysicalConstants& c) {
    if (v_ml < 0.0) throw validation_error("volume_to_weight: negative volume");
    return v_ml / ml_per_lbf(c);
}

} // namespace pour
