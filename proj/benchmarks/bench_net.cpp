#include <benchmark/benchmark.h>

#include "pour/net/backward.hpp"
#include "pour/net/forward.hpp"

namespace {

using namespace pour;

static void BM_SequenceForward(benchmark::State& state) {
    const auto steps = static_cast<Eigen::Index>(state.range(0));
    net::NetParams params = net::NetParams::init(16, 6, 1);
    Eigen::MatrixXd inputs = Eigen::MatrixXd::Random(6, steps);
    for (auto _ : state) {
        auto y = net::sequence_forward(params, inputs, 1.0, nullptr, false);
        benchmark::DoNotOptimize(y);
    }
    state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_SequenceForward)->Arg(120)->Arg(360)->Arg(600);

static void BM_ForwardBackward(benchmark::State& state) {
    const auto steps = static_cast<Eigen::Index>(state.range(0));
    net::NetParams params = net::NetParams::init(16, 6, 1);
    Eigen::MatrixXd inputs = Eigen::MatrixXd::Random(6, steps);
    Eigen::VectorXd targets = Eigen::VectorXd::Random(steps);
    for (auto _ : state) {
        net::ForwardCache cache;
        const Eigen::VectorXd y =
            net::sequence_forward(params, inputs, 1.0, nullptr, false, &cache);
        const Eigen::VectorXd dy = 2.0 * (y - targets) / static_cast<double>(steps);
        auto grads = net::backward(params, cache, dy);
        benchmark::DoNotOptimize(grads);
    }
    state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_ForwardBackward)->Arg(120)->Arg(360)->Arg(600);

} // namespace
