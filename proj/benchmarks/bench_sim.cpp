#include <benchmark/benchmark.h>

#include "pour/sim/geometry.hpp"
#include "pour/sim/plant.hpp"

namespace {

using namespace pour;

static void BM_PlantStep(benchmark::State& state) {
    const ContainerSpec cup{"cup", 110.0, 74.0};
    sim::FlowModel flow;
    sim::SimState s = sim::make_sim(cup, 300.0, 0.0);
    double omega = 30.0;
    for (auto _ : state) {
        sim::step(s, omega, flow);
        if (s.theta_deg >= 60.0) omega = -30.0;
        if (s.theta_deg <= 1.0) omega = 30.0;
        benchmark::DoNotOptimize(s.v_recv_ml);
    }
}
BENCHMARK(BM_PlantStep);

static void BM_RetainedVolumeClosedForm(benchmark::State& state) {
    const ContainerSpec cup{"cup", 110.0, 74.0};
    double theta = 0.0;
    for (auto _ : state) {
        theta = theta >= 88.0 ? 0.0 : theta + 0.5;
        benchmark::DoNotOptimize(sim::max_retained_volume(cup, theta));
    }
}
BENCHMARK(BM_RetainedVolumeClosedForm);

static void BM_RetainedVolumeOracle(benchmark::State& state) {
    const ContainerSpec cup{"cup", 110.0, 74.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim::oracle_max_retained_volume(cup, 42.0, 2000));
    }
}
BENCHMARK(BM_RetainedVolumeOracle);

} // namespace
