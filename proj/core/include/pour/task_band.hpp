#pragma once

#include "pour/container.hpp"
#include "pour/rng.hpp"

namespace pour {

/// Shared sampling band for pouring requirements: fill the source to
/// [0.4, 0.9] of capacity and request between 50 mL and (fill - 30) mL.
struct TaskBand {
    double v_total_lo_frac = 0.4;
    double v_total_hi_frac = 0.9;
    double v_2pour_min_ml = 50.0;
    double v_2pour_margin_ml = 30.0;
};

struct SampledTask {
    double v_total_ml = 0.0;
    double v_2pour_ml = 0.0;
};

/// Throws validation_error when the container cannot host the band
/// (0.4 * capacity must leave room for a 50 mL target plus the margin).
SampledTask sample_task(const ContainerSpec& container, Rng& rng, const TaskBand& band = {});

} // namespace pour
