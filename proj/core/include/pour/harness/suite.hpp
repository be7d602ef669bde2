#pragma once

#include <filesystem>

#include "pour/harness/catalog.hpp"
#include "pour/harness/config.hpp"
#include "pour/harness/evaluate.hpp"
#include "pour/signal/demonstrator.hpp"

namespace pour::harness {

/// Full experiment run: demo generation, training, evaluation across the
/// catalog, switch baselines, batch and gradual fine-tuning on the bottle
/// analogs, post-fine-tune re-evaluations including the accustomed-container
/// regression check. Every artifact lands under out_dir; reruns with the
/// same config are byte-identical.
struct SuiteResult {
    std::filesystem::path out_dir;

    double demonstrator_mu_e_ml = 0.0;
    double demonstrator_sigma_e_ml = 0.0;
    double err_threshold_ml = 0.0;

    net::ModelCheckpoint model_m0;

    // pre-fine-tune evaluations: reference, 4 similar, 3 unaccustomed
    EvalReport eval_reference;
    std::vector<EvalReport> eval_similar;
    std::vector<EvalReport> eval_unaccustomed; // tall-thin, tall, wide

    EvalReport switch_fast; // (20, -30) deg/s on the reference container
    EvalReport switch_slow; // (5, -7.5) deg/s on the same tasks

    gssp::GsspResult batch_tall_thin;
    EvalReport eval_post_batch_tall_thin;
    gssp::GsspResult batch_tall;
    EvalReport eval_post_batch_tall;
    gssp::GsspResult gradual_tall_thin;
    EvalReport eval_post_gradual_tall_thin;
    gssp::GsspResult combined_tall_thin; // batch with demonstrations mixed in
    EvalReport eval_post_combined_tall_thin;

    // specialization cost: the reference container under the tall-thin batch model
    EvalReport eval_reference_under_batch;
};

SuiteResult run_experiment_suite(const SuiteConfig& config,
                                 const std::filesystem::path& out_dir);

/// Demo generation alone (the gen-demos subcommand): writes trial files and
/// a manifest with split assignments and demonstrator statistics.
signal::DemoSet generate_and_save_demos(const SuiteConfig& config,
                                        const ContainerCatalog& catalog,
                                        const std::filesystem::path& out_dir);

} // namespace pour::harness
