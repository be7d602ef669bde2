#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "pour/errors.hpp"
#include "pour/net/checkpoint.hpp"
#include "pour/trial.hpp"

namespace pour::net {

struct TrainOptions {
    int epochs = 2000;
    double lr = 0.001;
    double keep_prob = 0.5;
    int hidden_units = 16;
    int n_layers = 1;
    int batch_trials = 16;
    unsigned threads = 1;
};

struct CurvePoint {
    int epoch = 0;
    double train_loss = 0.0; // evaluation-mode loss on the training split
    double val_loss = 0.0;
};

struct TrainResult {
    ModelCheckpoint checkpoint;
    std::vector<CurvePoint> curve;
    int best_epoch = 0;
};

/// Thrown when the loss turns non-finite; carries the last finite snapshot.
class training_failure : public error {
public:
    training_failure(const std::string& msg, ModelCheckpoint last_good)
        : error(msg), last_good_(std::move(last_good)) {}
    const ModelCheckpoint& last_good() const { return last_good_; }

private:
    ModelCheckpoint last_good_;
};

/// Trains from scratch: fits the normalizer on the training split only,
/// runs epochs of 16-trial mini-batches (gradients accumulated trial by
/// trial, equal trial weights), evaluates validation loss with dropout
/// disabled each epoch and returns the snapshot with the lowest validation
/// loss. Bit-identical given (data, options, seed).
TrainResult train(const std::vector<TrialRecord>& train_set,
                  const std::vector<TrialRecord>& val_set, const TrainOptions& options,
                  std::uint64_t seed);

/// Continues Adam training from an existing checkpoint with fresh optimizer
/// state, keeping the base normalizer. With an empty validation set the
/// final epoch is returned instead of the best-validation snapshot. The
/// lineage gains one label.
TrainResult continue_training(const ModelCheckpoint& base,
                              const std::vector<TrialRecord>& train_set,
                              const std::vector<TrialRecord>& val_set, int epochs, double lr,
                              unsigned threads, std::uint64_t seed);

/// Writes the training curve as CSV rows epoch,train_loss,val_loss.
void save_curve(const std::vector<CurvePoint>& curve, const std::filesystem::path& path);

} // namespace pour::net
