#include "pour/error_stats.hpp"

#include <cmath>

#include "pour/errors.hpp"

namespace pour {

ErrorStats compute_error_stats(std::vector<PourOutcome> per_trial) {
    if (per_trial.empty()) throw validation_error("compute_error_stats: empty set");
    double sum = 0.0;
    for (const auto& p : per_trial) sum += std::abs(p.signed_error_ml);
    const double mu = sum / static_cast<double>(per_trial.size());
    double var = 0.0;
    for (const auto& p : per_trial) {
        const double d = std::abs(p.signed_error_ml) - mu;
        var += d * d;
    }
    var /= static_cast<double>(per_trial.size());
    ErrorStats stats;
    stats.mu_e_ml = mu;
    stats.sigma_e_ml = std::sqrt(var);
    stats.per_trial = std::move(per_trial);
    return stats;
}

} // namespace pour
