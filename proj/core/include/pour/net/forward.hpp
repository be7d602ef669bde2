#pragma once

#include <Eigen/Core>
#include <vector>

#include "pour/net/params.hpp"
#include "pour/rng.hpp"

namespace pour::net {

/// Everything the backward pass needs from one cell step.
struct CellCache {
    Eigen::VectorXd concat; // [h_prev; x], n+d
    Eigen::VectorXd c_prev; // n
    Eigen::VectorXd i, f, g, o, c, tanh_c;
};

/// One peephole LSTM step. Gates i and f read c(t-1) through their peephole
/// weights, the cell update is c = f.*c_prev + i.*g, and the output gate
/// reads the new c(t). Throws numeric_error on shape mismatch or non-finite
/// input.
void cell_forward(const Eigen::VectorXd& x, const Eigen::VectorXd& h_prev,
                  const Eigen::VectorXd& c_prev, const LstmParams& params,
                  Eigen::VectorXd& h_out, Eigen::VectorXd& c_out, CellCache* cache = nullptr);

/// Inverted dropout: in training each entry survives with probability
/// keep_prob and is scaled by 1/keep_prob; at inference this is the
/// identity. Applied only to non-recurrent connections.
Eigen::VectorXd dropout(const Eigen::VectorXd& h, double keep_prob, Rng& rng, bool training);

/// Per-layer, per-step caches of a full sequence pass.
struct ForwardCache {
    // caches[layer][t]
    std::vector<std::vector<CellCache>> caches;
    // dropout masks (already scaled by 1/keep_prob) applied to each layer's
    // output before it feeds the next layer / the head; masks[layer][t]
    std::vector<std::vector<Eigen::VectorXd>> masks;
    // dropped outputs per layer (inputs of the next stage); dropped[layer][t]
    std::vector<std::vector<Eigen::VectorXd>> dropped;
};

/// Runs the layer stack over inputs (d x S, one column per step) from zero
/// initial state and returns the head outputs ŷ(1..S). Dropout draws are
/// taken when `training` is true and keep_prob < 1; rng may be null
/// otherwise.
Eigen::VectorXd sequence_forward(const NetParams& params, const Eigen::MatrixXd& inputs,
                                 double keep_prob, Rng* rng, bool training,
                                 ForwardCache* cache = nullptr);

/// Streaming single-step state for closed-loop execution (dropout off).
class LstmStepper {
public:
    explicit LstmStepper(const NetParams& params);

    /// Feeds one input vector, returns the head output for this step.
    double step(const Eigen::VectorXd& x);

    void reset();

private:
    const NetParams& params_;
    std::vector<Eigen::VectorXd> h_, c_;
};

/// Mean-over-trials of per-trial mean squared error; trials weigh equally
/// regardless of length. Throws validation_error on an empty batch or
/// numeric_error on shape mismatch.
double loss(const std::vector<Eigen::VectorXd>& predictions,
            const std::vector<Eigen::VectorXd>& targets);

} // namespace pour::net
