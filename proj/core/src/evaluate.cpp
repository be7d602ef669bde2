#include "pour/harness/evaluate.hpp"

#include "pour/parallel.hpp"

namespace pour::harness {

namespace {

EvalReport aggregate(std::vector<control::PourResult> pours, std::string container,
                     std::string model_label, std::vector<std::string> lineage,
                     std::uint64_t seed) {
    EvalReport report;
    report.container = std::move(container);
    report.model_label = std::move(model_label);
    report.model_lineage = std::move(lineage);
    report.seed = seed;
    std::vector<PourOutcome> outcomes;
    outcomes.reserve(pours.size());
    for (const auto& p : pours) {
        outcomes.push_back({p.requested_ml, p.actual_ml, p.signed_error_ml});
        report.durations_s.push_back(p.duration_s);
        report.settled.push_back(p.terminated_by == control::Termination::Settled);
    }
    report.stats = compute_error_stats(std::move(outcomes));
    report.pours = std::move(pours);
    return report;
}

} // namespace

EvalReport evaluate(const net::ModelCheckpoint& model, const ContainerSpec& container,
                    int n_trials, const gssp::PlantConfig& plant, std::uint64_t seed,
                    unsigned threads, bool record_trajectories) {
    const auto tasks = gssp::generate_practice_tasks(n_trials, container, seed);
    std::vector<control::PourResult> pours(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        pours[i] = control::run_closed_loop(model, tasks[i], plant.flow, plant.sensor,
                                            plant.limits, record_trajectories);
    });
    return aggregate(std::move(pours), container.name, model.lineage.back(), model.lineage, seed);
}

EvalReport evaluate_switch(const ContainerSpec& container, double omega_fwd_dps,
                           double omega_back_dps, int n_trials, const gssp::PlantConfig& plant,
                           std::uint64_t seed, unsigned threads) {
    const auto tasks = gssp::generate_practice_tasks(n_trials, container, seed);
    std::vector<control::PourResult> pours(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        pours[i] = control::switch_controller(tasks[i], omega_fwd_dps, omega_back_dps, plant.flow,
                                              plant.sensor, plant.limits);
    });
    const std::string label = omega_fwd_dps >= 10.0 ? "switch-fast" : "switch-slow";
    return aggregate(std::move(pours), container.name, label, {label}, seed);
}

} // namespace pour::harness
