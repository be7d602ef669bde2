#include "pour/net/forward.hpp"

#include <cmath>
#include <random>

#include "pour/errors.hpp"

namespace pour::net {

namespace {

inline Eigen::VectorXd sigmoid(const Eigen::VectorXd& v) {
    return v.unaryExpr([](double x) { return 1.0 / (1.0 + std::exp(-x)); });
}

} // namespace

namespace detail {

// Gate matrices stacked [i; f; g; o] so a whole step is one matrix-vector
// product. Pure layout change, the per-element arithmetic is unchanged.
Eigen::MatrixXd stack_weights(const LstmParams& p) {
    Eigen::MatrixXd w(4 * p.n, p.n + p.d);
    w.middleRows(0 * p.n, p.n) = p.W_i;
    w.middleRows(1 * p.n, p.n) = p.W_f;
    w.middleRows(2 * p.n, p.n) = p.W_g;
    w.middleRows(3 * p.n, p.n) = p.W_o;
    return w;
}

Eigen::VectorXd stack_biases(const LstmParams& p) {
    Eigen::VectorXd b(4 * p.n);
    b.segment(0 * p.n, p.n) = p.b_i;
    b.segment(1 * p.n, p.n) = p.b_f;
    b.segment(2 * p.n, p.n) = p.b_g;
    b.segment(3 * p.n, p.n) = p.b_o;
    return b;
}

} // namespace detail

void cell_forward(const Eigen::VectorXd& x, const Eigen::VectorXd& h_prev,
                  const Eigen::VectorXd& c_prev, const LstmParams& params,
                  Eigen::VectorXd& h_out, Eigen::VectorXd& c_out, CellCache* cache) {
    params.check_shapes();
    if (x.size() != params.d || h_prev.size() != params.n || c_prev.size() != params.n) {
        throw numeric_error("cell_forward: input shape mismatch");
    }
    if (!x.allFinite() || !h_prev.allFinite() || !c_prev.allFinite()) {
        throw numeric_error("cell_forward: non-finite input");
    }

    Eigen::VectorXd concat(params.n + params.d);
    concat << h_prev, x;

    const Eigen::VectorXd i = sigmoid(params.W_i * concat + params.b_i + params.p_i.cwiseProduct(c_prev));
    const Eigen::VectorXd f = sigmoid(params.W_f * concat + params.b_f + params.p_f.cwiseProduct(c_prev));
    const Eigen::VectorXd g = (params.W_g * concat + params.b_g).array().tanh();
    const Eigen::VectorXd c = f.cwiseProduct(c_prev) + i.cwiseProduct(g);
    const Eigen::VectorXd o = sigmoid(params.W_o * concat + params.b_o + params.p_o.cwiseProduct(c));
    const Eigen::VectorXd tanh_c = c.array().tanh();

    h_out = o.cwiseProduct(tanh_c);
    c_out = c;
    if (cache) {
        cache->concat = std::move(concat);
        cache->c_prev = c_prev;
        cache->i = i;
        cache->f = f;
        cache->g = g;
        cache->o = o;
        cache->c = c;
        cache->tanh_c = tanh_c;
    }
}

Eigen::VectorXd dropout(const Eigen::VectorXd& h, double keep_prob, Rng& rng, bool training) {
    if (!(keep_prob > 0.0) || keep_prob > 1.0) {
        throw validation_error("dropout: keep_prob must lie in (0, 1]");
    }
    if (!training || keep_prob == 1.0) return h;
    std::bernoulli_distribution keep(keep_prob);
    Eigen::VectorXd out(h.size());
    for (Eigen::Index k = 0; k < h.size(); ++k) {
        out[k] = keep(rng) ? h[k] / keep_prob : 0.0;
    }
    return out;
}

Eigen::VectorXd sequence_forward(const NetParams& params, const Eigen::MatrixXd& inputs,
                                 double keep_prob, Rng* rng, bool training,
                                 ForwardCache* cache) {
    params.check_shapes();
    if (inputs.rows() != params.input_dim()) {
        throw numeric_error("sequence_forward: input dim mismatch");
    }
    const auto steps = inputs.cols();
    const bool drop = training && keep_prob < 1.0;
    if (drop && rng == nullptr) {
        throw numeric_error("sequence_forward: dropout requires an rng in training mode");
    }

    const std::size_t n_layers = params.layers.size();
    if (cache) {
        cache->caches.assign(n_layers, {});
        cache->masks.assign(n_layers, {});
        cache->dropped.assign(n_layers, {});
        for (std::size_t l = 0; l < n_layers; ++l) {
            cache->caches[l].resize(static_cast<std::size_t>(steps));
            cache->masks[l].resize(static_cast<std::size_t>(steps));
            cache->dropped[l].resize(static_cast<std::size_t>(steps));
        }
    }

    Eigen::VectorXd y(steps);
    Eigen::MatrixXd layer_in = inputs;
    for (std::size_t l = 0; l < n_layers; ++l) {
        const LstmParams& L = params.layers[l];
        const int n = L.n;
        const Eigen::MatrixXd w_stack = detail::stack_weights(L);
        const Eigen::VectorXd b_stack = detail::stack_biases(L);

        Eigen::MatrixXd layer_out(n, steps);
        Eigen::VectorXd h = Eigen::VectorXd::Zero(n);
        Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
        Eigen::VectorXd concat(n + L.d);
        Eigen::VectorXd pre(4 * n);
        for (Eigen::Index t = 0; t < steps; ++t) {
            concat.head(n) = h;
            concat.tail(L.d) = layer_in.col(t);
            pre.noalias() = w_stack * concat;
            pre += b_stack;
            pre.segment(0, n) += L.p_i.cwiseProduct(c);
            pre.segment(n, n) += L.p_f.cwiseProduct(c);

            const Eigen::VectorXd i = sigmoid(pre.segment(0, n));
            const Eigen::VectorXd f = sigmoid(pre.segment(n, n));
            const Eigen::VectorXd g = pre.segment(2 * n, n).array().tanh();
            Eigen::VectorXd c_new = f.cwiseProduct(c) + i.cwiseProduct(g);
            const Eigen::VectorXd o =
                sigmoid(pre.segment(3 * n, n) + L.p_o.cwiseProduct(c_new));
            const Eigen::VectorXd tanh_c = c_new.array().tanh();
            Eigen::VectorXd h_new = o.cwiseProduct(tanh_c);

            Eigen::VectorXd mask;
            Eigen::VectorXd dropped_h;
            if (drop) {
                std::bernoulli_distribution keep(keep_prob);
                mask.resize(n);
                for (int k = 0; k < n; ++k) {
                    mask[k] = keep(*rng) ? 1.0 / keep_prob : 0.0;
                }
                dropped_h = h_new.cwiseProduct(mask);
            } else {
                dropped_h = h_new;
            }
            layer_out.col(t) = dropped_h;

            if (cache) {
                CellCache& cc = cache->caches[l][static_cast<std::size_t>(t)];
                cc.concat = concat;
                cc.c_prev = c;
                cc.i = i;
                cc.f = f;
                cc.g = g;
                cc.o = o;
                cc.c = c_new;
                cc.tanh_c = tanh_c;
                if (drop) cache->masks[l][static_cast<std::size_t>(t)] = mask;
                cache->dropped[l][static_cast<std::size_t>(t)] = dropped_h;
            }
            h = std::move(h_new);
            c = std::move(c_new);
        }
        layer_in = std::move(layer_out);
    }
    for (Eigen::Index t = 0; t < steps; ++t) {
        y[t] = params.head.W_y.dot(layer_in.col(t)) + params.head.b_y;
    }
    return y;
}

LstmStepper::LstmStepper(const NetParams& params) : params_(params) {
    params_.check_shapes();
    reset();
}

double LstmStepper::step(const Eigen::VectorXd& x) {
    Eigen::VectorXd in = x;
    for (std::size_t l = 0; l < params_.layers.size(); ++l) {
        Eigen::VectorXd h_next, c_next;
        cell_forward(in, h_[l], c_[l], params_.layers[l], h_next, c_next);
        h_[l] = std::move(h_next);
        c_[l] = std::move(c_next);
        in = h_[l];
    }
    return params_.head.W_y.dot(in) + params_.head.b_y;
}

void LstmStepper::reset() {
    h_.clear();
    c_.clear();
    for (const auto& layer : params_.layers) {
        h_.push_back(Eigen::VectorXd::Zero(layer.n));
        c_.push_back(Eigen::VectorXd::Zero(layer.n));
    }
}

double loss(const std::vector<Eigen::VectorXd>& predictions,
            const std::vector<Eigen::VectorXd>& targets) {
    if (predictions.empty()) throw validation_error("loss: empty batch");
    if (predictions.size() != targets.size()) throw numeric_error("loss: batch size mismatch");
    double acc = 0.0;
    for (std::size_t k = 0; k < predictions.size(); ++k) {
        if (predictions[k].size() != targets[k].size() || predictions[k].size() == 0) {
            throw numeric_error("loss: sequence length mismatch");
        }
        acc += (predictions[k] - targets[k]).squaredNorm() /
               static_cast<double>(predictions[k].size());
    }
    return acc / static_cast<double>(predictions.size());
}

} // namespace pour::net
