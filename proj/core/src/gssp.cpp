#include "pour/gssp/gssp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pour/errors.hpp"
#include "pour/parallel.hpp"
#include "pour/signal/dataset.hpp"
#include "pour/task_band.hpp"

namespace pour::gssp {

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::Gradual: return "gradual";
        case Mode::Batch: return "batch";
        case Mode::BatchCombined: return "batch-combined";
    }
    return "gradual";
}

Mode mode_from_string(const std::string& s) {
    if (s == "gradual") return Mode::Gradual;
    if (s == "batch") return Mode::Batch;
    if (s == "batch-combined") return Mode::BatchCombined;
    throw validation_error("unknown gssp mode '" + s + "'");
}

void GsspConfig::validate() const {
    if (mode == Mode::Gradual) {
        if (n_practices < 5 || n_practices > 15) {
            throw validation_error("gssp: gradual mode needs n in [5, 15]");
        }
    } else {
        if (n_practices < 36) {
            throw validation_error("gssp: batch mode needs n > 35");
        }
    }
    if (!(err_threshold_ml > 0.0)) throw validation_error("gssp: err_threshold must be positive");
    if (max_rounds < 1) throw validation_error("gssp: max_rounds must be >= 1");
    if (fine_tune_epochs < 0 || !(fine_tune_lr > 0.0)) {
        throw validation_error("gssp: bad fine-tune hyperparameters");
    }
}

std::vector<control::PourTask> generate_practice_tasks(int n, const ContainerSpec& container,
                                                       std::uint64_t seed) {
    if (n < 1) throw validation_error("generate_practice_tasks: n must be >= 1");
    std::vector<control::PourTask> tasks;
    tasks.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Rng rng = make_rng(seed, "practice-task", static_cast<std::uint64_t>(i));
        const SampledTask band = sample_task(container, rng);
        control::PourTask task;
        task.container = container;
        task.vol_total_ml = band.v_total_ml;
        task.vol_2pour_ml = band.v_2pour_ml;
        task.seed = derive_seed(seed, "practice-pour", static_cast<std::uint64_t>(i));
        tasks.push_back(std::move(task));
    }
    return tasks;
}

PracticeOutcome practice(const net::ModelCheckpoint& model,
                         const std::vector<control::PourTask>& tasks, const PlantConfig& plant,
                         unsigned threads) {
    if (tasks.empty()) throw validation_error("practice: no tasks");
    PracticeOutcome outcome;
    outcome.results.resize(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        outcome.results[i] =
            control::run_closed_loop(model, tasks[i], plant.flow, plant.sensor, plant.limits);
    });
    double err = 0.0;
    for (const auto& r : outcome.results) {
        err += std::abs(r.signed_error_ml);
        if (r.trial) outcome.dataset.push_back(*r.trial);
    }
    outcome.mean_error_ml = err / static_cast<double>(tasks.size());
    return outcome;
}

net::ModelCheckpoint fine_tune(const net::ModelCheckpoint& model,
                               const std::vector<TrialRecord>& dataset, int epochs, double lr,
                               std::uint64_t seed, unsigned threads) {
    if (dataset.empty()) throw insufficient_data_error("fine_tune: empty dataset");
    std::vector<TrialRecord> train_split = dataset;
    std::vector<TrialRecord> val_split;
    if (dataset.size() >= 10) {
        auto parts = signal::split_dataset(std::move(train_split),
                                           derive_seed(seed, "fine-tune-split"), 0.8);
        train_split = std::move(parts.first);
        val_split = std::move(parts.second);
    }
    return net::continue_training(model, train_split, val_split, epochs, lr, threads,
                                  derive_seed(seed, "fine-tune"))
        .checkpoint;
}

GsspResult gssp_gradual(const net::ModelCheckpoint& model_init, const ContainerSpec& container,
                        const GsspConfig& config, const PlantConfig& plant, std::uint64_t seed) {
    config.validate();
    if (config.mode != Mode::Gradual) throw validation_error("gssp_gradual: mode must be gradual");

    GsspResult result;
    result.model = model_init;
    std::vector<TrialRecord> accumulated;
    net::ModelCheckpoint best = model_init;
    double best_error = std::numeric_limits<double>::infinity();

    for (int round = 1; round <= config.max_rounds; ++round) {
        const std::uint64_t task_seed =
            config.regenerate_tasks ? derive_seed(seed, "round", static_cast<std::uint64_t>(round))
                                    : derive_seed(seed, "round", 1);
        const auto tasks = generate_practice_tasks(config.n_practices, container, task_seed);
        PracticeOutcome outcome = practice(result.model, tasks, plant, config.threads);
        accumulated.insert(accumulated.end(), outcome.dataset.begin(), outcome.dataset.end());

        RoundInfo info;
        info.round = round;
        info.n = config.n_practices;
        info.mean_error_ml = outcome.mean_error_ml;
        info.dataset_size = accumulated.size();
        info.model_label = result.model.lineage.back();
        result.rounds.push_back(info);

        if (outcome.mean_error_ml < best_error) {
            best_error = outcome.mean_error_ml;
            best = result.model;
        }
        if (outcome.mean_error_ml < config.err_threshold_ml) {
            result.converged = true;
            return result;
        }
        if (round == config.max_rounds) break;
        result.model = fine_tune(result.model, accumulated, config.fine_tune_epochs,
                                 config.fine_tune_lr,
                                 derive_seed(seed, "round-tune", static_cast<std::uint64_t>(round)),
                                 config.threads);
    }
    result.model = std::move(best);
    result.converged = false;
    return result;
}

GsspResult gssp_batch(const net::ModelCheckpoint& model_init, const ContainerSpec& container,
                      const GsspConfig& config, const PlantConfig& plant, std::uint64_t seed,
                      bool include_demos, const std::vector<TrialRecord>& demo_train_split) {
    config.validate();
    if (config.mode == Mode::Gradual) {
        throw validation_error("gssp_batch: mode must be batch or batch-combined");
    }
    const bool combined = include_demos || config.mode == Mode::BatchCombined;
    if (combined && demo_train_split.empty()) {
        throw validation_error("gssp_batch: combined mode needs the demonstration training split");
    }

    const auto tasks = generate_practice_tasks(config.n_practices, container,
                                               derive_seed(seed, "round", 1));
    PracticeOutcome outcome = practice(model_init, tasks, plant, config.threads);

    std::vector<TrialRecord> dataset = outcome.dataset;
    if (combined) {
        dataset.insert(dataset.end(), demo_train_split.begin(), demo_train_split.end());
    }

    GsspResult result;
    RoundInfo info;
    info.round = 1;
    info.n = config.n_practices;
    info.mean_error_ml = outcome.mean_error_ml;
    info.dataset_size = dataset.size();
    info.model_label = model_init.lineage.back();
    result.rounds.push_back(info);
    result.model = fine_tune(model_init, dataset, config.fine_tune_epochs, config.fine_tune_lr,
                             derive_seed(seed, "round-tune", 1), config.threads);
    result.converged = true;
    return result;
}

} // namespace pour::gssp
