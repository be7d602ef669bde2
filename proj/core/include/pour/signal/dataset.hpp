#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pour/trial.hpp"

namespace pour::signal {

/// Seeded shuffled split into (train, validation). Disjoint and exhaustive;
/// train size = round(n * ratio). Requires at least 10 trials.
std::pair<std::vector<TrialRecord>, std::vector<TrialRecord>> split_dataset(
    std::vector<TrialRecord> trials, std::uint64_t seed, double ratio = 221.0 / 284.0);

} // namespace pour::signal
