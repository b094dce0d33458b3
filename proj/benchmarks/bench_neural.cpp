#include <benchmark/benchmark.h>

#include "uavsim/agent.hpp"

namespace {

void Forward(benchmark::State& state) {
    uavsim::Rng rng(3);
    const uavsim::Mlp net = uavsim::Mlp::init({15, 40, 112}, rng);
    std::vector<double> input(15);
    for (double& v : input) v = rng.uniform();
    uavsim::MlpScratch scratch;
    for (auto _ : state) {
        uavsim::forward_into(net, input, scratch);
        benchmark::DoNotOptimize(scratch.act.back());
    }
}
BENCHMARK(Forward);

void TrainStep(benchmark::State& state) {
    uavsim::Rng rng(4);
    const uavsim::ActionCatalog catalog({0.1, 0.2, 0.3, 0.4}, 2, true);
    uavsim::QNetPair pair =
        uavsim::QNetPair::init({15, 40, catalog.size()}, 1e-3, rng);
    uavsim::ReplayBuffer buffer(1000);
    for (int i = 0; i < 1000; ++i) {
        uavsim::Transition t;
        t.state.resize(15);
        t.next_state.resize(15);
        for (double& v : t.state) v = rng.uniform();
        for (double& v : t.next_state) v = rng.uniform();
        t.action = rng.uniform_int(catalog.size());
        t.reward = rng.uniform(0.0, 10.0);
        t.next_served = 2;
        buffer.push(std::move(t));
    }
    uavsim::Rng sampler(5);
    uavsim::TrainScratch scratch;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            uavsim::train_step(pair, buffer, 32, 0.9, catalog, sampler, scratch));
    }
}
BENCHMARK(TrainStep);

}  // namespace
