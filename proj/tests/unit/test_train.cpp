#include <doctest.h>

#include <cmath>
#include <random>

#include "pour/net/checkpoint.hpp"
#include "pour/net/train.hpp"
#include "pour/rng.hpp"

using namespace pour;
using namespace pour::net;

namespace {

// A tiny learnable task mirroring the pipeline's shape: tilt forward at a
// per-trial rate, reverse once the accumulated weight crosses a fraction of
// the recorded outcome, settle at zero.
std::vector<TrialRecord> toy_trials(std::size_t count, std::uint64_t seed) {
    std::vector<TrialRecord> out;
    Rng rng(seed);
    std::uniform_real_distribution<double> rate(20.0, 40.0);
    std::uniform_real_distribution<double> trigger(0.15, 0.35);
    for (std::size_t k = 0; k < count; ++k) {
        const double r = rate(rng);
        const double f_trigger = trigger(rng);
        std::vector<double> theta{0.0}, f{0.0};
        bool backward = false;
        while (true) {
            if (!backward && f.back() >= f_trigger) backward = true;
            const double omega = backward ? -0.8 * r : r;
            const double next = std::max(0.0, theta.back() + omega / 60.0);
            theta.push_back(next);
            f.push_back(f.back() + std::max(0.0, next - 15.0) * 4e-4);
            if (backward && next <= 0.0) break;
            if (theta.size() > 400) break;
        }
        for (int t = 0; t < 10; ++t) { // settle tail
            theta.push_back(theta.back());
            f.push_back(f.back());
        }
        out.push_back(make_trial({"toy", 110.0, 74.0}, f.back() + 0.3, f.back() + 0.05,
                                 theta, f, SourceTag::SyntheticDemo));
    }
    return out;
}

bool identical_params(const NetParams& a, const NetParams& b) {
    bool same = true;
    std::vector<std::pair<const double*, std::size_t>> av, bv;
    a.for_each_tensor([&](const std::string&, const double* d, std::size_t s) {
        av.emplace_back(d, s);
    });
    b.for_each_tensor([&](const std::string&, const double* d, std::size_t s) {
        bv.emplace_back(d, s);
    });
    for (std::size_t k = 0; k < av.size(); ++k) {
        for (std::size_t i = 0; i < av[k].second; ++i) {
            if (av[k].first[i] != bv[k].first[i]) same = false;
        }
    }
    return same;
}

} // namespace

TEST_CASE("returned checkpoint minimizes recorded validation loss") {
    const auto train_set = toy_trials(12, 1);
    const auto val_set = toy_trials(4, 2);
    TrainOptions opt;
    opt.epochs = 12;
    opt.hidden_units = 8;
    opt.threads = 2;
    const auto result = train(train_set, val_set, opt, 42);
    REQUIRE(result.curve.size() == 12);
    double min_val = std::numeric_limits<double>::infinity();
    for (const auto& p : result.curve) min_val = std::min(min_val, p.val_loss);
    CHECK(result.curve[result.best_epoch - 1].val_loss == min_val);
    CHECK(result.checkpoint.lineage == std::vector<std::string>{"M0"});
}

TEST_CASE("same seed and data give a bit-identical checkpoint") {
    const auto train_set = toy_trials(10, 3);
    const auto val_set = toy_trials(3, 4);
    TrainOptions opt;
    opt.epochs = 6;
    opt.hidden_units = 8;
    auto a = train(train_set, val_set, opt, 7);
    opt.threads = 3; // thread count must not change the result
    auto b = train(train_set, val_set, opt, 7);
    CHECK(identical_params(a.checkpoint.params, b.checkpoint.params));
    CHECK(checkpoint_to_json(a.checkpoint) == checkpoint_to_json(b.checkpoint));
}

TEST_CASE("training reduces the loss substantially") {
    const auto train_set = toy_trials(16, 5);
    const auto val_set = toy_trials(5, 6);
    TrainOptions opt;
    opt.epochs = 150;
    opt.hidden_units = 8;
    opt.threads = 2;
    const auto result = train(train_set, val_set, opt, 11);
    CHECK(result.curve.back().train_loss < result.curve.front().train_loss / 5.0);
}

TEST_CASE("lr = 0 leaves the initial parameters in place") {
    const auto train_set = toy_trials(10, 7);
    const auto val_set = toy_trials(3, 8);
    TrainOptions opt;
    opt.epochs = 3;
    opt.hidden_units = 6;
    opt.lr = 0.0;
    const auto result = train(train_set, val_set, opt, 9);
    const NetParams fresh =
        NetParams::init(6, signal::kFeatureDim, derive_seed(9, "init"), 1);
    CHECK(identical_params(result.checkpoint.params, fresh));
}

TEST_CASE("continue_training keeps the normalizer, extends lineage") {
    const auto train_set = toy_trials(10, 10);
    const auto val_set = toy_trials(3, 11);
    TrainOptions opt;
    opt.epochs = 4;
    opt.hidden_units = 6;
    const auto base = train(train_set, val_set, opt, 13).checkpoint;

    const auto tuned = continue_training(base, train_set, val_set, 3, 0.001, 1, 17).checkpoint;
    CHECK(tuned.lineage == std::vector<std::string>{"M0", "M1"});
    CHECK(tuned.normalizer.input_mean == base.normalizer.input_mean);

    // epochs = 0: parameters unchanged, lineage still appended
    const auto frozen = continue_training(base, train_set, {}, 0, 0.001, 1, 18).checkpoint;
    CHECK(identical_params(frozen.params, base.params));
    CHECK(frozen.lineage == std::vector<std::string>{"M0", "M1"});
}

TEST_CASE("empty splits are rejected") {
    TrainOptions opt;
    CHECK_THROWS_AS(train({}, toy_trials(2, 1), opt, 1), insufficient_data_error);
    CHECK_THROWS_AS(train(toy_trials(2, 1), {}, opt, 1), insufficient_data_error);
}
