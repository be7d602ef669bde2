#include "pour/harness/suite.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "pour/errors.hpp"
#include "pour/harness/export.hpp"
#include "pour/numeric.hpp"
#include "pour/signal/dataset.hpp"
#include "pour/signal/trial_io.hpp"

namespace pour::harness {

namespace {

std::string trial_filename(std::size_t index) {
    std::ostringstream name;
    name << "trial_" << std::setw(4) << std::setfill('0') << index << ".csv";
    return name.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw io_error("suite: cannot open " + path.string());
    f << text;
}

void save_eval(const EvalReport& report, const std::filesystem::path& dir,
               const std::string& stem) {
    write_report_csv(report, dir / (stem + ".csv"));
}

std::string summary_row(const EvalReport& r) {
    std::ostringstream out;
    out << std::left << std::setw(18) << r.container << std::setw(14) << r.model_label
        << std::right << std::setw(10) << fmt_fixed(r.stats.mu_e_ml, 2) << std::setw(10)
        << fmt_fixed(r.stats.sigma_e_ml, 2) << "\n";
    return out.str();
}

} // namespace

signal::DemoSet generate_and_save_demos(const SuiteConfig& config,
                                        const ContainerCatalog& catalog,
                                        const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto plant = config.plant_config();
    signal::DemoSet demos = signal::generate_demo_set(
        catalog.training, static_cast<std::size_t>(config.n_demos), plant.flow, plant.sensor,
        config.demonstrator, derive_seed(config.root_seed, "demos"), config.effective_threads());

    // Split assignment by trial index, seeded from the root.
    std::vector<TrialRecord> all;
    all.reserve(demos.demos.size());
    for (const auto& d : demos.demos) all.push_back(d.trial);
    std::vector<std::size_t> index(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) index[i] = i;
    Rng rng(derive_seed(config.root_seed, "split"));
    std::shuffle(index.begin(), index.end(), rng);
    const auto n_train = static_cast<std::size_t>(
        std::llround(static_cast<double>(all.size()) * config.split_ratio));

    std::vector<signal::Split> split(all.size(), signal::Split::Validation);
    for (std::size_t i = 0; i < n_train; ++i) split[index[i]] = signal::Split::Train;

    signal::Manifest manifest;
    manifest.metadata = {
        {"demonstrator_mu_e_ml", fmt_double(demos.stats.mu_e_ml)},
        {"demonstrator_sigma_e_ml", fmt_double(demos.stats.sigma_e_ml)},
        {"n_trials", std::to_string(all.size())},
        {"n_train", std::to_string(n_train)},
    };
    for (std::size_t i = 0; i < all.size(); ++i) {
        const std::string name = trial_filename(i);
        signal::save_trial(all[i], out_dir / name);
        manifest.entries.push_back({name, split[i]});
    }
    signal::save_manifest(manifest, out_dir / "manifest.csv");
    return demos;
}

SuiteResult run_experiment_suite(const SuiteConfig& config,
                                 const std::filesystem::path& out_dir) {
    if (!config.root_seed_set) throw config_error("suite: root_seed is required");
    const ContainerCatalog catalog = default_catalog();
    const auto plant = config.plant_config();
    const unsigned threads = config.effective_threads();
    const std::uint64_t root = config.root_seed;

    SuiteResult result;
    result.out_dir = out_dir;
    std::filesystem::create_directories(out_dir);
    std::filesystem::create_directories(out_dir / "demos");
    std::filesystem::create_directories(out_dir / "models");
    std::filesystem::create_directories(out_dir / "eval");
    std::filesystem::create_directories(out_dir / "baselines");
    std::filesystem::create_directories(out_dir / "gssp");
    std::filesystem::create_directories(out_dir / "exports");

    write_text(out_dir / "config_echo.txt", config.echo());

    // 1. demonstrations
    signal::DemoSet demos = generate_and_save_demos(config, catalog, out_dir / "demos");
    result.demonstrator_mu_e_ml = demos.stats.mu_e_ml;
    result.demonstrator_sigma_e_ml = demos.stats.sigma_e_ml;
    result.err_threshold_ml = config.err_threshold_factor * demos.stats.mu_e_ml;

    std::vector<TrialRecord> train_split = signal::load_split(out_dir / "demos/manifest.csv",
                                                              signal::Split::Train);
    std::vector<TrialRecord> val_split = signal::load_split(out_dir / "demos/manifest.csv",
                                                            signal::Split::Validation);

    // 2. initial model
    net::TrainResult trained = net::train(train_split, val_split, config.train_options(),
                                          derive_seed(root, "train"));
    result.model_m0 = trained.checkpoint;
    net::save_checkpoint(result.model_m0, out_dir / "models/M0.json");
    net::save_curve(trained.curve, out_dir / "models/M0.curve.csv");

    // 3. pre-fine-tune evaluations (eval seeds depend on the container only,
    //    so pre/post comparisons share the same task sets)
    auto eval_seed = [&](const ContainerSpec& c) { return derive_seed(root, "eval-" + c.name); };
    auto run_eval = [&](const net::ModelCheckpoint& model, const ContainerSpec& c) {
        return evaluate(model, c, config.eval_trials, plant, eval_seed(c), threads,
                        config.verbose_trajectories);
    };

    result.eval_reference = run_eval(result.model_m0, catalog.reference());
    save_eval(result.eval_reference, out_dir / "eval", catalog.reference().name + "__M0");
    for (const auto& c : catalog.similar_test) {
        result.eval_similar.push_back(run_eval(result.model_m0, c));
        save_eval(result.eval_similar.back(), out_dir / "eval", c.name + "__M0");
    }
    for (const auto& c : catalog.unaccustomed) {
        result.eval_unaccustomed.push_back(run_eval(result.model_m0, c));
        save_eval(result.eval_unaccustomed.back(), out_dir / "eval", c.name + "__M0");
    }

    // 4. switch baselines on the reference container, same task set
    result.switch_fast = evaluate_switch(catalog.reference(), 20.0, -30.0, config.eval_trials,
                                         plant, eval_seed(catalog.reference()), threads);
    result.switch_slow = evaluate_switch(catalog.reference(), 5.0, -7.5, config.eval_trials,
                                         plant, eval_seed(catalog.reference()), threads);
    save_eval(result.switch_fast, out_dir / "baselines", "switch_fast");
    save_eval(result.switch_slow, out_dir / "baselines", "switch_slow");

    // 5. batch fine-tuning on both bottle analogs
    gssp::GsspConfig batch_cfg;
    batch_cfg.mode = gssp::Mode::Batch;
    batch_cfg.err_threshold_ml = result.err_threshold_ml;
    batch_cfg.fine_tune_epochs = config.fine_tune_epochs;
    batch_cfg.fine_tune_lr = config.fine_tune_lr;
    batch_cfg.threads = threads;

    batch_cfg.n_practices = config.batch_n_tall_thin;
    result.batch_tall_thin =
        gssp::gssp_batch(result.model_m0, catalog.tall_thin_bottle(), batch_cfg, plant,
                         derive_seed(root, "gssp-batch-tall-thin"));
    net::save_checkpoint(result.batch_tall_thin.model, out_dir / "models/tall_thin_batch.json");
    result.eval_post_batch_tall_thin =
        run_eval(result.batch_tall_thin.model, catalog.tall_thin_bottle());
    save_eval(result.eval_post_batch_tall_thin, out_dir / "eval",
              catalog.tall_thin_bottle().name + "__batch");

    batch_cfg.n_practices = config.batch_n_tall;
    result.batch_tall = gssp::gssp_batch(result.model_m0, catalog.tall_bottle(), batch_cfg, plant,
                                         derive_seed(root, "gssp-batch-tall"));
    net::save_checkpoint(result.batch_tall.model, out_dir / "models/tall_batch.json");
    result.eval_post_batch_tall = run_eval(result.batch_tall.model, catalog.tall_bottle());
    save_eval(result.eval_post_batch_tall, out_dir / "eval",
              catalog.tall_bottle().name + "__batch");

    // 6. gradual fine-tuning on the tall-thin bottle
    gssp::GsspConfig gradual_cfg = batch_cfg;
    gradual_cfg.mode = gssp::Mode::Gradual;
    gradual_cfg.n_practices = config.gradual_n;
    gradual_cfg.max_rounds = config.gradual_max_rounds;
    result.gradual_tall_thin =
        gssp::gssp_gradual(result.model_m0, catalog.tall_thin_bottle(), gradual_cfg, plant,
                           derive_seed(root, "gssp-gradual-tall-thin"));
    net::save_checkpoint(result.gradual_tall_thin.model,
                         out_dir / "models/tall_thin_gradual.json");
    result.eval_post_gradual_tall_thin =
        run_eval(result.gradual_tall_thin.model, catalog.tall_thin_bottle());
    save_eval(result.eval_post_gradual_tall_thin, out_dir / "eval",
              catalog.tall_thin_bottle().name + "__gradual");
    {
        std::ostringstream rounds;
        rounds << "round,n,mean_error_ml,dataset_size,model_label\n";
        for (const auto& r : result.gradual_tall_thin.rounds) {
            rounds << r.round << ',' << r.n << ',' << fmt_double(r.mean_error_ml) << ','
                   << r.dataset_size << ',' << r.model_label << "\n";
        }
        rounds << "converged," << (result.gradual_tall_thin.converged ? "true" : "false")
               << ",,,\n";
        write_text(out_dir / "gssp/tall_thin_gradual_rounds.csv", rounds.str());
    }

    // 7. combined practices + demonstrations variant (report comparison)
    gssp::GsspConfig combined_cfg = batch_cfg;
    combined_cfg.mode = gssp::Mode::BatchCombined;
    combined_cfg.n_practices = config.batch_n_tall_thin;
    result.combined_tall_thin =
        gssp::gssp_batch(result.model_m0, catalog.tall_thin_bottle(), combined_cfg, plant,
                         derive_seed(root, "gssp-batch-tall-thin"), true, train_split);
    net::save_checkpoint(result.combined_tall_thin.model,
                         out_dir / "models/tall_thin_batch_combined.json");
    result.eval_post_combined_tall_thin =
        run_eval(result.combined_tall_thin.model, catalog.tall_thin_bottle());
    save_eval(result.eval_post_combined_tall_thin, out_dir / "eval",
              catalog.tall_thin_bottle().name + "__batch_combined");

    // 8. specialization cost on the accustomed container
    result.eval_reference_under_batch =
        run_eval(result.batch_tall_thin.model, catalog.reference());
    save_eval(result.eval_reference_under_batch, out_dir / "eval",
              catalog.reference().name + "__batch_tall_thin");

    // 9. plot exports
    export_target_vs_actual(result.eval_reference,
                            out_dir / "exports/reference_target_vs_actual.csv");
    {
        std::vector<EvalReport> bars = {result.eval_reference};
        bars.insert(bars.end(), result.eval_similar.begin(), result.eval_similar.end());
        bars.insert(bars.end(), result.eval_unaccustomed.begin(),
                    result.eval_unaccustomed.end());
        export_error_bars(bars, out_dir / "exports/error_bars.csv");
    }
    if (config.verbose_trajectories && !result.eval_reference.pours.empty()) {
        export_trajectory(result.eval_reference.pours.front(),
                          out_dir / "exports/reference_trajectory.csv");
    }

    // 10. summary table
    {
        std::ostringstream s;
        s << "pouring error by source container (mu_e / sigma_e, mL)\n";
        s << "------------------------------------------------------\n";
        s << summary_row(result.eval_reference);
        for (const auto& r : result.eval_similar) s << summary_row(r);
        s << std::left << std::setw(18) << catalog.reference().name << std::setw(14)
          << "demonstrator" << std::right << std::setw(10)
          << fmt_fixed(result.demonstrator_mu_e_ml, 2) << std::setw(10)
          << fmt_fixed(result.demonstrator_sigma_e_ml, 2) << "\n";
        for (const auto& r : result.eval_unaccustomed) s << summary_row(r);
        s << "\nswitch baselines (reference container)\n";
        s << "------------------------------------------------------\n";
        s << summary_row(result.switch_fast);
        s << summary_row(result.switch_slow);
        s << "\nfine-tuning on unaccustomed bottles\n";
        s << "------------------------------------------------------\n";
        s << summary_row(result.eval_post_batch_tall_thin);
        s << summary_row(result.eval_post_batch_tall);
        s << summary_row(result.eval_post_gradual_tall_thin);
        s << summary_row(result.eval_post_combined_tall_thin);
        s << "\ngradual rounds (tall-thin bottle): ";
        for (std::size_t i = 0; i < result.gradual_tall_thin.rounds.size(); ++i) {
            if (i) s << " -> ";
            s << fmt_fixed(result.gradual_tall_thin.rounds[i].mean_error_ml, 2);
        }
        s << (result.gradual_tall_thin.converged ? " (converged)\n" : " (max rounds)\n");
        s << "\nspecialization cost on the accustomed container\n";
        s << "------------------------------------------------------\n";
        s << summary_row(result.eval_reference_under_batch);
        write_text(out_dir / "summary.txt", s.str());
    }

    return result;
}

} // namespace pour::harness
