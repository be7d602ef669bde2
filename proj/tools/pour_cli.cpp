// Command-line surface of the pouring pipeline: demo generation, training,
// closed-loop evaluation, switch baselines, fine-tuning by practicing, the
// full experiment suite, plot-data export and the numeric self-checks.
//
// Exit codes: 0 success, 2 usage, 3 validation/infeasible input,
// 4 training failure, 5 self-check failure.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "pour/harness/catalog.hpp"
#include "pour/harness/export.hpp"
#include "pour/harness/suite.hpp"
#include "pour/net/gradcheck.hpp"
#include "pour/net/train.hpp"
#include "pour/numeric.hpp"
#include "pour/rng.hpp"
#include "pour/sim/geometry.hpp"
#include "pour/signal/trial_io.hpp"

namespace {

namespace fs = std::filesystem;
using pour::harness::SuiteConfig;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitTraining = 4;
constexpr int kExitCheckFailed = 5;

struct CommonArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_dir = "out";
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "flat key=value config file");
    cmd->add_option("--seed", args.seed, "root seed")->each([&](const std::string&) {
        args.seed_set = true;
    });
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--set", args.overrides, "override a config key, key=value")
        ->type_name("KEY=VALUE");
}

SuiteConfig resolve_config(const CommonArgs& args) {
    SuiteConfig config;
    if (!args.config_path.empty()) config = pour::harness::load_config(args.config_path);
    for (const auto& kv : args.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw pour::config_error("--set expects key=value, got '" + kv + "'");
        }
        pour::harness::apply_key(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (args.seed_set) {
        config.root_seed = args.seed;
        config.root_seed_set = true;
    }
    if (!config.root_seed_set) {
        throw pour::config_error("root seed required (--seed or root_seed in the config)");
    }
    return config;
}

int run_gen_demos(const CommonArgs& args) {
    const SuiteConfig config = resolve_config(args);
    const auto catalog = pour::harness::default_catalog();
    const auto demos =
        pour::harness::generate_and_save_demos(config, catalog, fs::path(args.out_dir));
    std::cout << "wrote " << demos.demos.size() << " demos to " << args.out_dir
              << " (demonstrator mu_e " << pour::fmt_fixed(demos.stats.mu_e_ml, 2)
              << " mL, sigma_e " << pour::fmt_fixed(demos.stats.sigma_e_ml, 2) << " mL)\n";
    return kExitOk;
}

int run_train(const CommonArgs& args, const std::string& data_dir) {
    const SuiteConfig config = resolve_config(args);
    const fs::path manifest = fs::path(data_dir) / "manifest.csv";
    const auto train_split = pour::signal::load_split(manifest, pour::signal::Split::Train);
    const auto val_split = pour::signal::load_split(manifest, pour::signal::Split::Validation);
    const auto result = pour::net::train(train_split, val_split, config.train_options(),
                                         pour::derive_seed(config.root_seed, "train"));
    fs::create_directories(args.out_dir);
    pour::net::save_checkpoint(result.checkpoint, fs::path(args.out_dir) / "M0.json");
    pour::net::save_curve(result.curve, fs::path(args.out_dir) / "M0.curve.csv");
    std::cout << "trained on " << train_split.size() << "/" << val_split.size()
              << " trials, best epoch " << result.best_epoch << ", val loss "
              << pour::fmt_double(result.curve.empty() ? 0.0
                                                       : result.curve.back().val_loss)
              << "; wrote " << (fs::path(args.out_dir) / "M0.json").string() << "\n";
    return kExitOk;
}

int run_eval(const CommonArgs& args, const std::string& model_path,
             const std::string& container_name, int trials, bool verbose_traj) {
    const SuiteConfig config = resolve_config(args);
    const auto catalog = pour::harness::default_catalog();
    const auto& container = catalog.find(container_name);
    const auto model = pour::net::load_checkpoint(model_path);
    const auto report = pour::harness::evaluate(
        model, container, trials, config.plant_config(),
        pour::derive_seed(config.root_seed, "eval-" + container.name),
        config.effective_threads(), verbose_traj || config.verbose_trajectories);
    fs::create_directories(args.out_dir);
    pour::harness::write_report_csv(report,
                                    fs::path(args.out_dir) / (container.name + "_report.csv"));
    if (verbose_traj || config.verbose_trajectories) {
        for (std::size_t i = 0; i < report.pours.size(); ++i) {
            pour::harness::export_trajectory(
                report.pours[i], fs::path(args.out_dir) /
                                     (container.name + "_pour_" + std::to_string(i) + ".csv"));
        }
    }
    std::cout << container.name << ": mu_e " << pour::fmt_fixed(report.stats.mu_e_ml, 2)
              << " mL, sigma_e " << pour::fmt_fixed(report.stats.sigma_e_ml, 2) << " mL over "
              << trials << " pours\n";
    return kExitOk;
}

int run_switch_baseline(const CommonArgs& args, const std::string& container_name, int trials) {
    const SuiteConfig config = resolve_config(args);
    const auto catalog = pour::harness::default_catalog();
    const auto& container = catalog.find(container_name);
    const auto seed = pour::derive_seed(config.root_seed, "eval-" + container.name);
    const auto fast = pour::harness::evaluate_switch(container, 20.0, -30.0, trials,
                                                     config.plant_config(), seed,
                                                     config.effective_threads());
    const auto slow = pour::harness::evaluate_switch(container, 5.0, -7.5, trials,
                                                     config.plant_config(), seed,
                                                     config.effective_threads());
    fs::create_directories(args.out_dir);
    pour::harness::write_report_csv(fast, fs::path(args.out_dir) / "switch_fast.csv");
    pour::harness::write_report_csv(slow, fs::path(args.out_dir) / "switch_slow.csv");
    std::cout << "switch fast (20/-30): mu_e " << pour::fmt_fixed(fast.stats.mu_e_ml, 2)
              << " mL; switch slow (5/-7.5): mu_e " << pour::fmt_fixed(slow.stats.mu_e_ml, 2)
              << " mL\n";
    return kExitOk;
}

int run_gssp(const CommonArgs& args, const std::string& model_path,
             const std::string& container_name, const std::string& mode_name,
             bool include_demos, const std::string& data_dir) {
    const SuiteConfig config = resolve_config(args);
    const auto catalog = pour::harness::default_catalog();
    const auto& container = catalog.find(container_name);
    const auto model = pour::net::load_checkpoint(model_path);

    pour::gssp::GsspConfig gssp_config;
    gssp_config.mode = pour::gssp::mode_from_string(mode_name);
    gssp_config.n_practices = gssp_config.mode == pour::gssp::Mode::Gradual
                                  ? config.gradual_n
                                  : config.batch_n_tall_thin;
    gssp_config.max_rounds = config.gradual_max_rounds;
    gssp_config.fine_tune_epochs = config.fine_tune_epochs;
    gssp_config.fine_tune_lr = config.fine_tune_lr;
    gssp_config.threads = config.effective_threads();
    // The error threshold rule is relative to the demonstrator's accuracy;
    // outside the suite the manifest metadata provides it.
    double demo_mu = 12.0;
    if (!data_dir.empty()) {
        const auto manifest = pour::signal::load_manifest(fs::path(data_dir) / "manifest.csv");
        if (const auto* v = manifest.find_meta("demonstrator_mu_e_ml")) demo_mu = std::stod(*v);
    }
    gssp_config.err_threshold_ml = config.err_threshold_factor * demo_mu;

    std::vector<pour::TrialRecord> demo_train;
    const bool combined = include_demos || gssp_config.mode == pour::gssp::Mode::BatchCombined;
    if (combined) {
        if (data_dir.empty()) {
            throw pour::config_error("gssp: --include-demos needs --data <demo dir>");
        }
        demo_train = pour::signal::load_split(fs::path(data_dir) / "manifest.csv",
                                              pour::signal::Split::Train);
    }

    const auto seed = pour::derive_seed(config.root_seed, "gssp-cli-" + container.name);
    pour::gssp::GsspResult result;
    if (gssp_config.mode == pour::gssp::Mode::Gradual) {
        result = pour::gssp::gssp_gradual(model, container, gssp_config,
                                          config.plant_config(), seed);
    } else {
        result = pour::gssp::gssp_batch(model, container, gssp_config, config.plant_config(),
                                        seed, combined, demo_train);
    }
    fs::create_directories(args.out_dir);
    const fs::path out = fs::path(args.out_dir) / (container.name + "_" + mode_name + ".json");
    pour::net::save_checkpoint(result.model, out);
    std::cout << "rounds:";
    for (const auto& r : result.rounds) {
        std::cout << " " << pour::fmt_fixed(r.mean_error_ml, 2);
    }
    std::cout << " mL; " << (result.converged ? "converged" : "max rounds reached")
              << "; wrote " << out.string() << "\n";
    return kExitOk;
}

int run_suite(const CommonArgs& args) {
    const SuiteConfig config = resolve_config(args);
    const auto result = pour::harness::run_experiment_suite(config, fs::path(args.out_dir));
    std::cout << "suite complete; summary at " << (result.out_dir / "summary.txt").string()
              << "\n";
    std::ifstream summary(result.out_dir / "summary.txt");
    std::cout << summary.rdbuf();
    return kExitOk;
}

int run_export(const CommonArgs& args, const std::string& report_path,
               const std::string& style_name) {
    const auto style = pour::harness::plot_style_from_string(style_name);
    fs::create_directories(args.out_dir);
    if (style == pour::harness::PlotStyle::Trajectory) {
        throw pour::validation_error(
            "export: trajectory files are written by eval/suite with --verbose-trajectories");
    }
    const auto outcomes = pour::harness::read_report_csv(report_path);
    pour::harness::EvalReport report;
    report.container = fs::path(report_path).stem().string();
    report.model_label = "report";
    report.stats = pour::compute_error_stats(outcomes);
    report.durations_s.assign(outcomes.size(), 0.0);
    report.settled.assign(outcomes.size(), true);
    const fs::path out = fs::path(args.out_dir) / (report.container + "_" + style_name + ".csv");
    if (style == pour::harness::PlotStyle::TargetVsActual) {
        pour::harness::export_target_vs_actual(report, out);
    } else {
        pour::harness::export_error_bars({report}, out);
    }
    std::cout << "wrote " << out.string() << "\n";
    return kExitOk;
}

int run_grad_check(const CommonArgs& args) {
    const SuiteConfig config = resolve_config(args);
    double worst = 0.0;
    std::string worst_tensor;
    for (int s = 0; s < 5; ++s) {
        const auto report = pour::net::gradient_check(
            8, 6, 20, pour::derive_seed(config.root_seed, "grad-check", s));
        if (report.max_rel_error > worst) {
            worst = report.max_rel_error;
            worst_tensor = report.worst_tensor;
        }
    }
    std::cout << "max relative error " << pour::fmt_double(worst) << " (" << worst_tensor
              << ")\n";
    if (worst >= 1e-4) {
        std::cerr << "grad-check FAILED (threshold 1e-4)\n";
        return kExitCheckFailed;
    }
    std::cout << "grad-check passed\n";
    return kExitOk;
}

int run_sim_oracle_check(const CommonArgs& args) {
    const SuiteConfig config = resolve_config(args);
    pour::Rng rng(pour::derive_seed(config.root_seed, "sim-oracle"));
    std::uniform_real_distribution<double> height(60.0, 300.0);
    std::uniform_real_distribution<double> diameter(40.0, 130.0);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        pour::ContainerSpec c{"check-" + std::to_string(k), height(rng), diameter(rng)};
        for (int theta = 0; theta <= 85; theta += 5) {
            const double closed = pour::sim::max_retained_volume(c, theta);
            const double oracle = pour::sim::oracle_max_retained_volume(c, theta, 4000);
            const double rel = std::abs(closed - oracle) /
                               std::max({std::abs(oracle), std::abs(closed), 1e-9});
            worst = std::max(worst, rel);
        }
    }
    std::cout << "max closed-form vs quadrature deviation " << pour::fmt_double(worst) << "\n";
    if (worst >= 0.005) {
        std::cerr << "sim-oracle-check FAILED (threshold 0.5%)\n";
        return kExitCheckFailed;
    }
    std::cout << "sim-oracle-check passed\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"learned accurate-pouring pipeline against a simulated plant"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string data_dir;
    std::string model_path;
    std::string container_name = "cup-d";
    std::string mode_name = "batch";
    std::string report_path;
    std::string style_name = "target_vs_actual";
    int trials = 15;
    bool include_demos = false;
    bool verbose_traj = false;

    auto* gen = app.add_subcommand("gen-demos", "generate scripted demonstrations");
    add_common(gen, args);
    gen->add_option("--trials", trials, "number of demos (overrides n_demos)")
        ->each([&](const std::string& v) { args.overrides.push_back("n_demos=" + v); });

    auto* train_cmd = app.add_subcommand("train", "train the sequence model on saved demos");
    add_common(train_cmd, args);
    train_cmd->add_option("--data", data_dir, "directory with manifest.csv")->required();

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a checkpoint closed-loop");
    add_common(eval_cmd, args);
    eval_cmd->add_option("--model", model_path, "checkpoint path")->required();
    eval_cmd->add_option("--container", container_name, "catalog container name");
    eval_cmd->add_option("--trials", trials, "number of pours");
    eval_cmd->add_flag("--verbose-trajectories", verbose_traj, "dump per-pour trajectories");

    auto* switch_cmd = app.add_subcommand("switch-baseline", "run the switch controllers");
    add_common(switch_cmd, args);
    switch_cmd->add_option("--container", container_name, "catalog container name");
    switch_cmd->add_option("--trials", trials, "number of pours");

    auto* gssp_cmd = app.add_subcommand("gssp", "fine-tune by self-practicing");
    add_common(gssp_cmd, args);
    gssp_cmd->add_option("--model", model_path, "checkpoint path")->required();
    gssp_cmd->add_option("--container", container_name, "catalog container name")->required();
    gssp_cmd->add_option("--mode", mode_name, "gradual | batch | batch-combined");
    gssp_cmd->add_flag("--include-demos", include_demos, "mix demonstrations into fine-tuning");
    gssp_cmd->add_option("--data", data_dir, "demo directory (for thresholds / --include-demos)");

    auto* suite_cmd = app.add_subcommand("suite", "run the full experiment suite");
    add_common(suite_cmd, args);
    suite_cmd->add_flag("--verbose-trajectories", verbose_traj, "dump trajectories")
        ->each([&](const std::string&) { args.overrides.push_back("verbose_trajectories=true"); });

    auto* export_cmd = app.add_subcommand("export", "re-export plot data from a report");
    add_common(export_cmd, args);
    export_cmd->add_option("--report", report_path, "per-trial report csv")->required();
    export_cmd->add_option("--style", style_name, "target_vs_actual | trajectory | error_bars");

    auto* grad_cmd = app.add_subcommand("grad-check", "BPTT vs finite differences");
    add_common(grad_cmd, args);

    auto* oracle_cmd = app.add_subcommand("sim-oracle-check", "geometry closed form vs quadrature");
    add_common(oracle_cmd, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return run_gen_demos(args);
        if (train_cmd->parsed()) return run_train(args, data_dir);
        if (eval_cmd->parsed()) {
            return run_eval(args, model_path, container_name, trials, verbose_traj);
        }
        if (switch_cmd->parsed()) return run_switch_baseline(args, container_name, trials);
        if (gssp_cmd->parsed()) {
            return run_gssp(args, model_path, container_name, mode_name, include_demos, data_dir);
        }
        if (suite_cmd->parsed()) return run_suite(args);
        if (export_cmd->parsed()) return run_export(args, report_path, style_name);
        if (grad_cmd->parsed()) return run_grad_check(args);
        if (oracle_cmd->parsed()) return run_sim_oracle_check(args);
    } catch (const pour::net::training_failure& e) {
        std::cerr << "training failure: " << e.what() << "\n";
        return kExitTraining;
    } catch (const pour::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const pour::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}
