#include "pour/net/gradcheck.hpp"

#include <cmath>
#include <random>

#include "pour/net/backward.hpp"
#include "pour/net/forward.hpp"
#include "pour/rng.hpp"

namespace pour::net {

GradCheckReport gradient_check(int hidden_units, int input_dim, int steps, std::uint64_t seed,
                               double h, int n_layers) {
    NetParams params = NetParams::init(hidden_units, input_dim, derive_seed(seed, "gc-init"),
                                       n_layers);
    Rng rng(derive_seed(seed, "gc-data"));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd inputs(input_dim, steps);
    for (Eigen::Index i = 0; i < inputs.size(); ++i) inputs.data()[i] = gauss(rng);
    Eigen::VectorXd targets(steps);
    for (Eigen::Index i = 0; i < targets.size(); ++i) targets[i] = gauss(rng);

    auto loss_at = [&](const NetParams& p) {
        const Eigen::VectorXd y = sequence_forward(p, inputs, 1.0, nullptr, false);
        return (y - targets).squaredNorm() / static_cast<double>(steps);
    };

    ForwardCache cache;
    const Eigen::VectorXd y = sequence_forward(params, inputs, 1.0, nullptr, false, &cache);
    const Eigen::VectorXd dy = 2.0 * (y - targets) / static_cast<double>(steps);
    NetParams analytic = backward(params, cache, dy);

    GradCheckReport report;
    struct Tensor {
        std::string name;
        double* data;
        std::size_t size;
    };
    std::vector<Tensor> tensors;
    params.for_each_tensor([&](const std::string& name, double* data, std::size_t size) {
        tensors.push_back({name, data, size});
    });
    std::vector<std::pair<const double*, std::size_t>> grad_tensors;
    analytic.for_each_tensor([&](const std::string&, const double* data, std::size_t size) {
        grad_tensors.emplace_back(data, size);
    });

    for (std::size_t k = 0; k < tensors.size(); ++k) {
        for (std::size_t i = 0; i < tensors[k].size; ++i) {
            const double saved = tensors[k].data[i];
            tensors[k].data[i] = saved + h;
            const double up = loss_at(params);
            tensors[k].data[i] = saved - h;
            const double down = loss_at(params);
            tensors[k].data[i] = saved;

            const double numeric = (up - down) / (2.0 * h);
            const double exact = grad_tensors[k].first[i];
            const double denom = std::max({std::abs(numeric), std::abs(exact), 1e-8});
            const double rel = std::abs(numeric - exact) / denom;
            if (rel > report.max_rel_error) {
                report.max_rel_error = rel;
                report.worst_tensor = tensors[k].name;
            }
        }
    }
    return report;
}

} // namespace pour::net
