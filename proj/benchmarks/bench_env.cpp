#include <benchmark/benchmark.h>

#include "uavsim/trainer.hpp"

namespace {

void EnvStep(benchmark::State& state) {
    uavsim::EnvConfig config;
    uavsim::Environment env(config, {}, 6);
    const uavsim::ActionCatalog catalog(config.gear_fractions, config.effective_cap(), true);
    uavsim::RandomPolicy policy(catalog, 6);
    env.reset(0);
    policy.begin_episode(env, 0);
    int t = 0;
    for (auto _ : state) {
        if (++t > config.slots) {
            state.PauseTiming();
            env.reset(0);
            t = 1;
            state.ResumeTiming();
        }
        benchmark::DoNotOptimize(env.step(policy.act(env)));
    }
}
BENCHMARK(EnvStep);

void TrainingEpisode(benchmark::State& state) {
    uavsim::EnvConfig config;
    config.slots = 50;
    config.recluster_period = 25;
    uavsim::TrainConfig train;
    train.episodes = 10;
    uavsim::Environment env(config, {}, 7);
    uavsim::Trainer trainer(config, {}, train, uavsim::Algo::Mdqn, 7);
    int ep = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(trainer.run_training_episode(env, ep++ % train.episodes));
    }
}
BENCHMARK(TrainingEpisode)->Unit(benchmark::kMillisecond);

}  // namespace
