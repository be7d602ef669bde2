#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "pour/gssp/gssp.hpp"
#include "pour/net/train.hpp"
#include "pour/signal/demonstrator.hpp"

namespace pour::harness {

/// Flat key=value run configuration. Every key has a CLI override; the root
/// seed is required. Unknown keys are rejected so typos fail loudly.
struct SuiteConfig {
    std::uint64_t root_seed = 0;
    bool root_seed_set = false;

    // dataset
    int n_demos = 284;
    double split_ratio = 221.0 / 284.0;

    // training (desk-scale defaults; the full-scale run uses epochs = 2000)
    int train_epochs = 300;
    double lr = 0.001;
    double keep_prob = 0.5;
    int hidden_units = 16;
    int n_layers = 1;
    int batch_trials = 16;
    unsigned threads = 0; // 0 = auto

    // evaluation
    int eval_trials = 15;

    // gssp
    int gradual_n = 10;
    int gradual_max_rounds = 8;
    int batch_n_tall_thin = 36;
    int batch_n_tall = 54;
    int fine_tune_epochs = 300;
    double fine_tune_lr = 0.001;
    double err_threshold_factor = 2.0; // times the demonstrator mean error

    // plant
    double flow_lag_tau_s = 0.15;
    double flow_settle_tau_s = 0.10;
    double flow_max_ml_per_s = 400.0;
    double sensor_white_noise_lbf = 0.002;
    double sensor_drift_walk_lbf = 0.0004;
    double sensor_drift_bound_lbf = 0.01;
    double sensor_bias_lbf = 0.0;

    // demonstrator
    signal::DemonstratorProfile demonstrator;

    // executor
    double omega_clamp_dps = 90.0;

    bool verbose_trajectories = false;

    unsigned effective_threads() const;
    net::TrainOptions train_options() const;
    gssp::PlantConfig plant_config() const;

    /// Deterministic echo of every key, one per line, sorted.
    std::string echo() const;
};

/// Parses `key = value` lines ('#' comments allowed). Unknown keys throw
/// config_error.
SuiteConfig load_config(const std::filesystem::path& path);
void apply_key(SuiteConfig& config, const std::string& key, const std::string& value);

} // namespace pour::harness
