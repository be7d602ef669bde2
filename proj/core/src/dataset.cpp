#include "pour/signal/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pour/errors.hpp"
#include "pour/rng.hpp"

namespace pour::signal {

std::pair<std::vector<TrialRecord>, std::vector<TrialRecord>> split_dataset(
    std::vector<TrialRecord> trials, std::uint64_t seed, double ratio) {
    if (trials.size() < 10) throw insufficient_data_error("split_dataset: need at least 10 trials");
    if (!(ratio > 0.0) || !(ratio < 1.0)) throw validation_error("split_dataset: ratio in (0,1)");

    std::vector<std::size_t> order(trials.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    const auto n_train = static_cast<std::size_t>(
        std::llround(static_cast<double>(trials.size()) * ratio));
    std::pair<std::vector<TrialRecord>, std::vector<TrialRecord>> out;
    out.first.reserve(n_train);
    out.second.reserve(trials.size() - n_train);
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto& dst = (i < n_train) ? out.first : out.second;
        dst.push_back(std::move(trials[order[i]]));
    }
    return out;
}

} // namespace pour::signal
