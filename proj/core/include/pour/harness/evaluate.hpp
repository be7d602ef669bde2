#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pour/error_stats.hpp"
#include "pour/gssp/gssp.hpp"

namespace pour::harness {

/// One evaluation run: n closed-loop pours of one model on one container,
/// with band-sampled targets. Regenerable bit-identically from (config, seed).
struct EvalReport {
    std::string container;
    std::string model_label;
    std::vector<std::string> model_lineage;
    ErrorStats stats;
    std::vector<double> durations_s;
    std::vector<bool> settled;
    std::vector<control::PourResult> pours;
    std::uint64_t seed = 0;
};

/// Pours n_trials times with arbitrary in-band (vol_total, vol_2pour) drawn
/// from the "eval" seed namespace (disjoint from practice seeds) and
/// aggregates mu_e / sigma_e over the absolute errors.
EvalReport evaluate(const net::ModelCheckpoint& model, const ContainerSpec& container,
                    int n_trials, const gssp::PlantConfig& plant, std::uint64_t seed,
                    unsigned threads = 1, bool record_trajectories = false);

/// Same task set through the switch-controller baseline.
EvalReport evaluate_switch(const ContainerSpec& container, double omega_fwd_dps,
                           double omega_back_dps, int n_trials, const gssp::PlantConfig& plant,
                           std::uint64_t seed, unsigned threads = 1);

} // namespace pour::harness
