#include "pour/net/params.hpp"

#include <cmath>
#include <random>

#include "pour/errors.hpp"
#include "pour/rng.hpp"

namespace pour::net {

LstmParams LstmParams::zeros(int n, int d) {
    if (n <= 0 || d <= 0) throw numeric_error("lstm params: n and d must be positive");
    LstmParams p;
    p.n = n;
    p.d = d;
    p.W_i = Eigen::MatrixXd::Zero(n, n + d);
    p.W_f = Eigen::MatrixXd::Zero(n, n + d);
    p.W_g = Eigen::MatrixXd::Zero(n, n + d);
    p.W_o = Eigen::MatrixXd::Zero(n, n + d);
    p.b_i = Eigen::VectorXd::Zero(n);
    p.b_f = Eigen::VectorXd::Zero(n);
    p.b_g = Eigen::VectorXd::Zero(n);
    p.b_o = Eigen::VectorXd::Zero(n);
    p.p_i = Eigen::VectorXd::Zero(n);
    p.p_f = Eigen::VectorXd::Zero(n);
    p.p_o = Eigen::VectorXd::Zero(n);
    return p;
}

void LstmParams::check_shapes() const {
    const auto rows = static_cast<Eigen::Index>(n);
    const auto cols = static_cast<Eigen::Index>(n + d);
    const bool ok = W_i.rows() == rows && W_i.cols() == cols && W_f.rows() == rows &&
                    W_f.cols() == cols && W_g.rows() == rows && W_g.cols() == cols &&
                    W_o.rows() == rows && W_o.cols() == cols && b_i.size() == rows &&
                    b_f.size() == rows && b_g.size() == rows && b_o.size() == rows &&
                    p_i.size() == rows && p_f.size() == rows && p_o.size() == rows;
    if (!ok) throw numeric_error("lstm params: inconsistent shapes");
}

HeadParams HeadParams::zeros(int n) {
    HeadParams h;
    h.W_y = Eigen::RowVectorXd::Zero(n);
    h.b_y = 0.0;
    return h;
}

NetParams NetParams::zeros(int n, int d, int n_layers) {
    if (n_layers < 1) throw numeric_error("net params: need at least one layer");
    NetParams p;
    p.layers.reserve(static_cast<std::size_t>(n_layers));
    for (int l = 0; l < n_layers; ++l) {
        p.layers.push_back(LstmParams::zeros(n, l == 0 ? d : n));
    }
    p.head = HeadParams::zeros(n);
    return p;
}

NetParams NetParams::init(int n, int d, std::uint64_t seed, int n_layers) {
    NetParams p = zeros(n, d, n_layers);
    Rng rng(seed);
    for (auto& layer : p.layers) {
        const double s = 1.0 / std::sqrt(static_cast<double>(layer.n + layer.d));
        std::uniform_real_distribution<double> u(-s, s);
        for (auto* w : {&layer.W_i, &layer.W_f, &layer.W_g, &layer.W_o}) {
            for (Eigen::Index i = 0; i < w->size(); ++i) w->data()[i] = u(rng);
        }
        layer.b_f.setConstant(1.0); // open forget gates early in training
    }
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    std::uniform_real_distribution<double> u(-s, s);
    for (Eigen::Index i = 0; i < p.head.W_y.size(); ++i) p.head.W_y.data()[i] = u(rng);
    return p;
}

void NetParams::add_scaled(const NetParams& other, double scale) {
    auto* o = const_cast<NetParams*>(&other);
    std::vector<std::pair<double*, std::size_t>> mine, theirs;
    for_each_tensor([&](const std::string&, double* data, std::size_t size) {
        mine.emplace_back(data, size);
    });
    o->for_each_tensor([&](const std::string&, double* data, std::size_t size) {
        theirs.emplace_back(data, size);
    });
    if (mine.size() != theirs.size()) throw numeric_error("net params: layout mismatch");
    for (std::size_t k = 0; k < mine.size(); ++k) {
        if (mine[k].second != theirs[k].second) {
            throw numeric_error("net params: tensor size mismatch");
        }
        for (std::size_t i = 0; i < mine[k].second; ++i) {
            mine[k].first[i] += scale * theirs[k].first[i];
        }
    }
}

void NetParams::scale(double s) {
    for_each_tensor([s](const std::string&, double* data, std::size_t size) {
        for (std::size_t i = 0; i < size; ++i) data[i] *= s;
    });
}

bool NetParams::all_finite() const {
    bool ok = true;
    for_each_tensor([&ok](const std::string&, const double* data, std::size_t size) {
        for (std::size_t i = 0; i < size; ++i) {
            if (!std::isfinite(data[i])) ok = false;
        }
    });
    return ok;
}

void NetParams::check_shapes() const {
    if (layers.empty()) throw numeric_error("net params: no layers");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        layers[l].check_shapes();
        if (l > 0 && layers[l].d != layers[l - 1].n) {
            throw numeric_error("net params: layer input dim must match previous hidden dim");
        }
    }
    if (head.W_y.size() != layers.back().n) {
        throw numeric_error("net params: head width must match hidden dim");
    }
}

} // namespace pour::net
