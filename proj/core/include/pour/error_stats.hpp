#pragma once

#include <vector>

namespace pour {

/// One evaluated pour: what was asked for, what landed, and the difference.
struct PourOutcome {
    double target_ml = 0.0;
    double actual_ml = 0.0;
    double signed_error_ml = 0.0;
};

/// mu_e / sigma_e over the absolute errors of an evaluation set, in mL.
struct ErrorStats {
    double mu_e_ml = 0.0;
    double sigma_e_ml = 0.0;
    std::vector<PourOutcome> per_trial;
};

/// mu = mean(|signed error|), sigma = population std of |signed error|.
/// Throws validation_error on an empty set.
ErrorStats compute_error_stats(std::vector<PourOutcome> per_trial);

} // namespace pour
