#include "pour/task_band.hpp"

#include <random>

#include "pour/errors.hpp"

namespace pour {

SampledTask sample_task(const ContainerSpec& container, Rng& rng, const TaskBand& band) {
    const double cap = capacity_ml(container);
    const double lo = band.v_total_lo_frac * cap;
    const double hi = band.v_total_hi_frac * cap;
    if (lo < band.v_2pour_min_ml + band.v_2pour_margin_ml) {
        throw validation_error("sample_task: container '" + container.name +
                               "' too small for the task band");
    }
    SampledTask task;
    std::uniform_real_distribution<double> fill(lo, hi);
    task.v_total_ml = fill(rng);
    std::uniform_real_distribution<double> target(band.v_2pour_min_ml,
                                                  task.v_total_ml - band.v_2pour_margin_ml);
    task.v_2pour_ml = target(rng);
    return task;
}

} // namespace pour
