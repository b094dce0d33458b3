#include <benchmark/benchmark.h>

#include "uavsim/channel.hpp"
#include "uavsim/noma.hpp"
#include "uavsim/rng.hpp"

namespace {

void LinkSample(benchmark::State& state) {
    const uavsim::UavState uav{0, 10.0, 20.0, 100.0, 10.0};
    const uavsim::UserState user{0, 150.0, -80.0};
    uavsim::ChannelParams params;
    uavsim::Rng rng(1);
    for (auto _ : state) {
        const double fade = uavsim::draw_fading(params.fading, rng);
        benchmark::DoNotOptimize(uavsim::sample_channel(uav, user, params, fade));
    }
}
BENCHMARK(LinkSample);

void ClusterRates(benchmark::State& state) {
    const int users = static_cast<int>(state.range(0));
    uavsim::Rng rng(2);
    uavsim::GainMatrix gains(3, std::vector<double>(users));
    for (auto& row : gains)
        for (double& g : row) g = rng.uniform(1e-12, 1e-8);
    std::vector<uavsim::PowerAllocation> powers(3);
    std::vector<int> cluster;
    for (auto& p : powers) {
        p.budget = 0.5;
        p.watts.assign(users, 0.1);
    }
    for (int k = 0; k < users; ++k) cluster.push_back(k);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            uavsim::cluster_rates_noma(cluster, 0, gains, powers, 3.98e-15, 1e6));
    }
}
BENCHMARK(ClusterRates)->Arg(2)->Arg(4)->Arg(8);

}  // namespace
