#include "pour/net/train.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "pour/net/adam.hpp"
#include "pour/net/backward.hpp"
#include "pour/net/forward.hpp"
#include "pour/numeric.hpp"
#include "pour/parallel.hpp"

namespace pour::net {

namespace {

double eval_loss(const NetParams& params, const std::vector<signal::EncodedTrial>& data,
                 unsigned threads) {
    std::vector<double> per_trial(data.size(), 0.0);
    parallel_for(data.size(), threads, [&](std::size_t k) {
        const Eigen::VectorXd y = sequence_forward(params, data[k].inputs, 1.0, nullptr, false);
        per_trial[k] = (y - data[k].targets).squaredNorm() / static_cast<double>(y.size());
    });
    double acc = 0.0;
    for (double v : per_trial) acc += v;
    return data.empty() ? 0.0 : acc / static_cast<double>(data.size());
}

TrainResult run_training(NetParams params, const signal::NormalizerStats& stats,
                         const std::vector<signal::EncodedTrial>& train_data,
                         const std::vector<signal::EncodedTrial>& val_data,
                         const TrainOptions& options, std::uint64_t seed,
                         std::vector<std::string> lineage) {
    params.check_shapes();
    auto snapshot = [&](const NetParams& p) {
        ModelCheckpoint ckpt;
        ckpt.params = p;
        ckpt.normalizer = stats;
        ckpt.hyper = {options.keep_prob, options.lr, options.epochs, seed};
        ckpt.lineage = lineage;
        return ckpt;
    };

    AdamState adam = AdamState::for_params(params);
    const bool select_by_val = !val_data.empty();
    NetParams best = params;
    double best_val = std::numeric_limits<double>::infinity();
    int best_epoch = 0;
    NetParams last_good = params;

    TrainResult result;
    result.curve.reserve(static_cast<std::size_t>(std::max(options.epochs, 0)));

    std::vector<std::size_t> order(train_data.size());
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 1; epoch <= options.epochs; ++epoch) {
        Rng shuffle_rng = make_rng(seed, "epoch-shuffle", static_cast<std::uint64_t>(epoch));
        std::shuffle(order.begin(), order.end(), shuffle_rng);

        for (std::size_t batch_lo = 0; batch_lo < order.size();
             batch_lo += static_cast<std::size_t>(options.batch_trials)) {
            const std::size_t batch_hi =
                std::min(order.size(), batch_lo + static_cast<std::size_t>(options.batch_trials));
            const std::size_t batch_n = batch_hi - batch_lo;

            std::vector<NetParams> grads(batch_n);
            parallel_for(batch_n, options.threads, [&](std::size_t b) {
                const auto& ex = train_data[order[batch_lo + b]];
                Rng drop_rng = make_rng(seed, "dropout",
                                        static_cast<std::uint64_t>(epoch) * train_data.size() +
                                            order[batch_lo + b]);
                ForwardCache cache;
                const Eigen::VectorXd y = sequence_forward(params, ex.inputs, options.keep_prob,
                                                           &drop_rng, true, &cache);
                const Eigen::VectorXd dy =
                    2.0 * (y - ex.targets) / static_cast<double>(y.size());
                grads[b] = backward(params, cache, dy);
            });
            // Fixed-order reduction keeps the sum bit-identical across thread counts.
            NetParams total = std::move(grads[0]);
            for (std::size_t b = 1; b < batch_n; ++b) total.add_scaled(grads[b], 1.0);
            total.scale(1.0 / static_cast<double>(batch_n));

            try {
                adam_step(params, total, adam, options.lr);
            } catch (const numeric_error& e) {
                throw training_failure(std::string("training diverged: ") + e.what(),
                                       snapshot(last_good));
            }
        }

        CurvePoint point;
        point.epoch = epoch;
        point.train_loss = eval_loss(params, train_data, options.threads);
        point.val_loss = select_by_val ? eval_loss(params, val_data, options.threads) : point.train_loss;
        result.curve.push_back(point);

        if (!std::isfinite(point.train_loss) || !std::isfinite(point.val_loss)) {
            throw training_failure("training diverged: non-finite loss at epoch " +
                                       std::to_string(epoch),
                                   snapshot(last_good));
        }
        last_good = params;
        if (select_by_val) {
            if (point.val_loss < best_val) {
                best_val = point.val_loss;
                best = params;
                best_epoch = epoch;
            }
        } else {
            best = params;
            best_epoch = epoch;
        }
    }

    result.checkpoint = snapshot(best);
    result.best_epoch = best_epoch;
    return result;
}

} // namespace

TrainResult train(const std::vector<TrialRecord>& train_set,
                  const std::vector<TrialRecord>& val_set, const TrainOptions& options,
                  std::uint64_t seed) {
    if (train_set.empty() || val_set.empty()) {
        throw insufficient_data_error("train: empty split");
    }
    const signal::NormalizerStats stats = signal::fit_normalizer(train_set);
    const auto train_data = signal::encode_dataset(train_set, stats);
    const auto val_data = signal::encode_dataset(val_set, stats);
    NetParams params = NetParams::init(options.hidden_units, signal::kFeatureDim,
                                       derive_seed(seed, "init"), options.n_layers);
    return run_training(std::move(params), stats, train_data, val_data, options, seed, {"M0"});
}

TrainResult continue_training(const ModelCheckpoint& base,
                              const std::vector<TrialRecord>& train_set,
                              const std::vector<TrialRecord>& val_set, int epochs, double lr,
                              unsigned threads, std::uint64_t seed) {
    base.validate();
    if (train_set.empty()) throw insufficient_data_error("continue_training: empty train set");
    const auto train_data = signal::encode_dataset(train_set, base.normalizer);
    const auto val_data = signal::encode_dataset(val_set, base.normalizer);

    TrainOptions options;
    options.epochs = epochs;
    options.lr = lr;
    options.keep_prob = base.hyper.keep_prob;
    options.hidden_units = base.params.hidden_dim();
    options.n_layers = static_cast<int>(base.params.layers.size());
    options.threads = threads;

    std::vector<std::string> lineage = base.lineage;
    lineage.push_back(base.next_label());

    if (epochs == 0) {
        TrainResult result;
        result.checkpoint = base;
        result.checkpoint.lineage = std::move(lineage);
        result.checkpoint.hyper.epochs = 0;
        result.checkpoint.hyper.lr = lr;
        result.checkpoint.hyper.seed = seed;
        result.best_epoch = 0;
        return result;
    }
    return run_training(base.params, base.normalizer, train_data, val_data, options, seed,
                        std::move(lineage));
}

void save_curve(const std::vector<CurvePoint>& curve, const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw io_error("save_curve: cannot open " + path.string());
    f << "epoch,train_loss,val_loss\n";
    for (const auto& p : curve) {
        f << p.epoch << ',' << fmt_double(p.train_loss) << ',' << fmt_double(p.val_loss) << "\n";
    }
}

} // namespace pour::net
