#include <doctest.h>

#include <cmath>

#include "pour/errors.hpp"
#include "pour/gssp/gssp.hpp"
#include "pour/net/checkpoint.hpp"
#include "pour/units.hpp"
#include "test_support.hpp"

using namespace pour;
using namespace pour::gssp;

namespace {

const ContainerSpec kCup{"cup-d", 110.0, 74.0}; // capacity ~473 mL

PlantConfig quiet_plant() {
    PlantConfig p;
    p.sensor.white_noise_std_lbf = 0.0;
    p.sensor.drift_walk_std_lbf = 0.0;
    return p;
}

GsspConfig fast_gradual(double threshold) {
    GsspConfig c;
    c.mode = Mode::Gradual;
    c.n_practices = 5;
    c.err_threshold_ml = threshold;
    c.max_rounds = 3;
    c.fine_tune_epochs = 1;
    c.threads = 2;
    return c;
}

} // namespace

TEST_CASE("practice tasks respect the band and are deterministic") {
    const ContainerSpec c283{"c283", 100.0, 60.0}; // capacity 282.74 mL
    const auto tasks = generate_practice_tasks(200, c283, 5);
    for (const auto& t : tasks) {
        CHECK(t.vol_total_ml > t.vol_2pour_ml);
        CHECK(t.vol_total_ml >= 0.4 * 282.74 - 0.01);
        CHECK(t.vol_total_ml <= 0.9 * 282.75);
        CHECK(t.vol_2pour_ml >= 50.0);
        CHECK(t.vol_2pour_ml <= t.vol_total_ml - 30.0);
    }
    const auto again = generate_practice_tasks(200, c283, 5);
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        CHECK(tasks[i].vol_total_ml == again[i].vol_total_ml);
        CHECK(tasks[i].vol_2pour_ml == again[i].vol_2pour_ml);
        CHECK(tasks[i].seed == again[i].seed);
    }
    const ContainerSpec tiny{"tiny", 50.0, 40.0}; // capacity ~63 mL
    CHECK_THROWS_AS(generate_practice_tasks(3, tiny, 1), validation_error);
}

TEST_CASE("practice relabels every dataset trial with its own outcome") {
    const auto model = testing::constant_velocity_model(30.0);
    const auto tasks = generate_practice_tasks(6, kCup, 9);
    const auto outcome = practice(model, tasks, quiet_plant(), 2);
    CHECK(outcome.results.size() == 6);
    CHECK(outcome.mean_error_ml > 0.0);
    for (std::size_t i = 0; i < outcome.dataset.size(); ++i) {
        const auto& trial = outcome.dataset[i];
        bool matched = false;
        for (const auto& r : outcome.results) {
            if (r.trial &&
                std::abs(weight_to_volume(trial.f_2pour_lbf) - r.actual_ml) < 1e-9) {
                matched = true;
            }
        }
        CHECK(matched);
    }
}

TEST_CASE("gradual: infinite threshold means one practice round, no fine-tunes") {
    const auto model = testing::constant_velocity_model(30.0);
    auto config = fast_gradual(1e18);
    const auto result = gssp_gradual(model, kCup, config, quiet_plant(), 3);
    CHECK(result.converged);
    CHECK(result.rounds.size() == 1);
    CHECK(result.model.lineage == std::vector<std::string>{"M0"});
}

TEST_CASE("gradual: dataset grows by n each round, lineage extends") {
    const auto model = testing::constant_velocity_model(30.0);
    auto config = fast_gradual(0.001); // unreachable threshold forces max_rounds
    const auto result = gssp_gradual(model, kCup, config, quiet_plant(), 3);
    CHECK_FALSE(result.converged);
    REQUIRE(result.rounds.size() == 3);
    for (std::size_t r = 0; r < result.rounds.size(); ++r) {
        CHECK(result.rounds[r].round == static_cast<int>(r) + 1);
        CHECK(result.rounds[r].n == 5);
        // every pour of the constant-velocity model produces a valid trial here
        CHECK(result.rounds[r].dataset_size == 5 * (r + 1));
    }
    CHECK(result.rounds[0].model_label == "M0");
    CHECK(result.rounds[1].model_label == "M1");
    CHECK(result.rounds[2].model_label == "M2");
}

TEST_CASE("gssp is a pure function of config and seed") {
    const auto model = testing::constant_velocity_model(30.0);
    auto config = fast_gradual(0.001);
    const auto a = gssp_gradual(model, kCup, config, quiet_plant(), 77);
    const auto b = gssp_gradual(model, kCup, config, quiet_plant(), 77);
    CHECK(net::checkpoint_to_json(a.model) == net::checkpoint_to_json(b.model));
    REQUIRE(a.rounds.size() == b.rounds.size());
    for (std::size_t r = 0; r < a.rounds.size(); ++r) {
        CHECK(a.rounds[r].mean_error_ml == b.rounds[r].mean_error_ml);
    }
}

TEST_CASE("batch mode validates n and runs exactly one round") {
    const auto model = testing::constant_velocity_model(30.0);
    GsspConfig config;
    config.mode = Mode::Batch;
    config.n_practices = 10; // too small for batch
    config.err_threshold_ml = 20.0;
    CHECK_THROWS_AS(config.validate(), validation_error);

    config.n_practices = 36;
    config.fine_tune_epochs = 1;
    config.threads = 2;
    const auto result = gssp_batch(model, kCup, config, quiet_plant(), 5);
    CHECK(result.rounds.size() == 1);
    CHECK(result.rounds[0].n == 36);
    CHECK(result.model.lineage == std::vector<std::string>{"M0", "M1"});
}

TEST_CASE("combined mode requires the demonstration split") {
    const auto model = testing::constant_velocity_model(30.0);
    GsspConfig config;
    config.mode = Mode::BatchCombined;
    config.n_practices = 36;
    config.err_threshold_ml = 20.0;
    config.fine_tune_epochs = 0;
    CHECK_THROWS_AS(gssp_batch(model, kCup, config, quiet_plant(), 5, true, {}),
                    validation_error);
}

TEST_CASE("fine_tune: epochs 0 appends lineage without touching parameters") {
    const auto model = testing::constant_velocity_model(25.0);
    const auto tasks = generate_practice_tasks(5, kCup, 11);
    const auto outcome = practice(model, tasks, quiet_plant(), 2);
    REQUIRE(!outcome.dataset.empty());
    const auto tuned = fine_tune(model, outcome.dataset, 0, 0.001, 3, 1);
    CHECK(tuned.lineage == std::vector<std::string>{"M0", "M1"});
    CHECK(net::checkpoint_to_json(tuned).find("\"lr\"") != std::string::npos);
    bool params_equal = true;
    std::vector<std::pair<const double*, std::size_t>> av, bv;
    model.params.for_each_tensor([&](const std::string&, const double* d, std::size_t s) {
        av.emplace_back(d, s);
    });
    tuned.params.for_each_tensor([&](const std::string&, const double* d, std::size_t s) {
        bv.emplace_back(d, s);
    });
    for (std::size_t k = 0; k < av.size(); ++k) {
        for (std::size_t i = 0; i < av[k].second; ++i) {
            if (av[k].first[i] != bv[k].first[i]) params_equal = false;
        }
    }
    CHECK(params_equal);
    CHECK_THROWS_AS(fine_tune(model, {}, 1, 0.001, 3, 1), insufficient_data_error);
}

TEST_CASE("gssp mode strings round-trip") {
    for (auto m : {Mode::Gradual, Mode::Batch, Mode::BatchCombined}) {
        CHECK(mode_from_string(to_string(m)) == m);
    }
    CHECK_THROWS_AS(mode_from_string("nope"), validation_error);
}
