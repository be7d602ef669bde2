#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pour/net/params.hpp"
#include "pour/signal/normalizer.hpp"

namespace pour::net {

struct Hyper {
    double keep_prob = 0.5;
    double lr = 0.001;
    int epochs = 2000;
    std::uint64_t seed = 0;
};

/// Everything needed to run or continue training a model: parameters,
/// normalizer statistics, hyperparameters and the fine-tuning lineage.
struct ModelCheckpoint {
    static constexpr int kFormatVersion = 1;

    NetParams params;
    signal::NormalizerStats normalizer;
    Hyper hyper;
    std::vector<std::string> lineage{"M0"};
    // Targets are trained in z-scored form and de-normalized at inference.
    std::string output_normalization = "zscore";

    void validate() const; // throws config_error on broken invariants

    /// Label for the next fine-tuned descendant, e.g. ["M0","M1"] -> "M2".
    std::string next_label() const;
};

/// Lossless full-precision JSON round-trip; save -> load -> save is
/// byte-identical. load refuses unknown format versions and corrupt files.
void save_checkpoint(const ModelCheckpoint& ckpt, const std::filesystem::path& path);
ModelCheckpoint load_checkpoint(const std::filesystem::path& path);

std::string checkpoint_to_json(const ModelCheckpoint& ckpt);
ModelCheckpoint checkpoint_from_json(const std::string& text);

} // namespace pour::net
