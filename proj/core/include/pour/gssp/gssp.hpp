#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pour/control/executor.hpp"
#include "pour/net/train.hpp"

namespace pour::gssp {

enum class Mode { Gradual, Batch, BatchCombined };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& s);

/// Fine-tuning by practicing. Gradual mode runs small rounds (n in [5, 15])
/// on a growing dataset until the round error drops under err_threshold_ml;
/// batch mode runs one large round (n > 35, the average per-container count
/// of the initial training set).
struct GsspConfig {
    Mode mode = Mode::Gradual;
    int n_practices = 10;
    double err_threshold_ml = 0.0;
    int max_rounds = 8;
    int fine_tune_epochs = 500;
    double fine_tune_lr = 0.001;
    bool regenerate_tasks = true; // false reuses the same requirement set every round
    unsigned threads = 1;

    void validate() const;
};

/// Plant parameters shared by every practice and evaluation pour.
struct PlantConfig {
    sim::FlowModel flow;
    sim::SensorModel sensor;
    control::ExecutorLimits limits;
};

/// Random pouring requirements from the shared task band; per-task seeds
/// come from the "practice-task" namespace of the given seed.
std::vector<control::PourTask> generate_practice_tasks(int n, const ContainerSpec& container,
                                                       std::uint64_t seed);

struct PracticeOutcome {
    std::vector<TrialRecord> dataset; // relabeled with the actual outcomes
    std::vector<control::PourResult> results;
    double mean_error_ml = 0.0; // mean |actual - requested| over the round
};

/// Runs one closed-loop pour per task and relabels each recorded trial with
/// its own actual outcome before it enters the dataset. Timed-out pours
/// still contribute their outcome to the round error; pours that produce no
/// valid trial (nothing poured) are kept out of the dataset only.
PracticeOutcome practice(const net::ModelCheckpoint& model,
                         const std::vector<control::PourTask>& tasks, const PlantConfig& plant,
                         unsigned threads = 1);

/// Continues Adam training on the practice dataset from the given model
/// (fresh optimizer state). Datasets of >= 10 trials get an 80/20
/// best-validation split; smaller ones train on everything and keep the
/// final epoch. The lineage gains one label even for epochs = 0.
net::ModelCheckpoint fine_tune(const net::ModelCheckpoint& model,
                               const std::vector<TrialRecord>& dataset, int epochs, double lr,
                               std::uint64_t seed, unsigned threads = 1);

struct RoundInfo {
    int round = 0;
    int n = 0;
    double mean_error_ml = 0.0;
    std::size_t dataset_size = 0;
    std::string model_label;
};

struct GsspResult {
    net::ModelCheckpoint model;
    std::vector<RoundInfo> rounds;
    bool converged = false;
};

/// Gradual fine-tuning: practice n, stop once the round error is under the
/// threshold, otherwise fine-tune on the full accumulated dataset and go
/// again. Hard stop at max_rounds returns the best round's model with
/// converged = false.
GsspResult gssp_gradual(const net::ModelCheckpoint& model_init, const ContainerSpec& container,
                        const GsspConfig& config, const PlantConfig& plant, std::uint64_t seed);

/// Batch fine-tuning: one large practice round, one fine-tune. When
/// include_demos is set the original demonstration training split joins the
/// practice dataset.
GsspResult gssp_batch(const net::ModelCheckpoint& model_init, const ContainerSpec& container,
                      const GsspConfig& config, const PlantConfig& plant, std::uint64_t seed,
                      bool include_demos = false,
                      const std::vector<TrialRecord>& demo_train_split = {});

} // namespace pour::gssp
