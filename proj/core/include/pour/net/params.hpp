#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace pour::net {

/// Weights of one peephole LSTM layer with n units over d inputs. Gate
/// matrices act on the concatenation [h(t-1), x(t)] (hidden part first);
/// p_i/p_f peek at c(t-1) and p_o peeks at the freshly updated c(t).
struct LstmParams {
    int n = 16;
    int d = 6;
    Eigen::MatrixXd W_i, W_f, W_g, W_o; // n x (n+d)
    Eigen::VectorXd b_i, b_f, b_g, b_o; // n
    Eigen::VectorXd p_i, p_f, p_o;      // n

    static LstmParams zeros(int n, int d);
    void check_shapes() const; // throws numeric_error on inconsistency
};

/// Linear read-out ŷ(t) = W_y h(t) + b_y.
struct HeadParams {
    Eigen::RowVectorXd W_y; // 1 x n
    double b_y = 0.0;

    static HeadParams zeros(int n);
};

/// Full parameter set: a stack of LSTM layers plus the linear head. Only a
/// single layer is exercised by the pipeline, but the stack mechanism is
/// generic.
struct NetParams {
    std::vector<LstmParams> layers;
    HeadParams head;

    static NetParams zeros(int n, int d, int n_layers = 1);

    /// Uniform(-s, s) with s = 1/sqrt(n+d) for matrices, zero biases and
    /// peepholes, forget bias +1.
    static NetParams init(int n, int d, std::uint64_t seed, int n_layers = 1);

    int input_dim() const { return layers.empty() ? 0 : layers.front().d; }
    int hidden_dim() const { return layers.empty() ? 0 : layers.back().n; }

    /// Visits every tensor as (name, data, size); the visitation order is
    /// fixed and shared by gradients and optimizer state.
    template <class F>
    void for_each_tensor(F&& f) {
        for (std::size_t l = 0; l < layers.size(); ++l) {
            auto& L = layers[l];
            const std::string p = "layers[" + std::to_string(l) + "].";
            f(p + "W_i", L.W_i.data(), static_cast<std::size_t>(L.W_i.size()));
            f(p + "W_f", L.W_f.data(), static_cast<std::size_t>(L.W_f.size()));
            f(p + "W_g", L.W_g.data(), static_cast<std::size_t>(L.W_g.size()));
            f(p + "W_o", L.W_o.data(), static_cast<std::size_t>(L.W_o.size()));
            f(p + "b_i", L.b_i.data(), static_cast<std::size_t>(L.b_i.size()));
            f(p + "b_f", L.b_f.data(), static_cast<std::size_t>(L.b_f.size()));
            f(p + "b_g", L.b_g.data(), static_cast<std::size_t>(L.b_g.size()));
            f(p + "b_o", L.b_o.data(), static_cast<std::size_t>(L.b_o.size()));
            f(p + "p_i", L.p_i.data(), static_cast<std::size_t>(L.p_i.size()));
            f(p + "p_f", L.p_f.data(), static_cast<std::size_t>(L.p_f.size()));
            f(p + "p_o", L.p_o.data(), static_cast<std::size_t>(L.p_o.size()));
        }
        f("head.W_y", head.W_y.data(), static_cast<std::size_t>(head.W_y.size()));
        f("head.b_y", &head.b_y, std::size_t{1});
    }

    template <class F>
    void for_each_tensor(F&& f) const {
        const_cast<NetParams*>(this)->for_each_tensor(
            [&f](const std::string& name, double* data, std::size_t size) {
                f(name, static_cast<const double*>(data), size);
            });
    }

    /// Gradient/optimizer-state accumulation helpers; shapes must match.
    void add_scaled(const NetParams& other, double scale);
    void scale(double s);
    bool all_finite() const;
    void check_shapes() const;
};

} // namespace pour::net
