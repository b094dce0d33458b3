#pragma once

#include <cstdint>
#include <vector>

#include "uavsim/baselines.hpp"
#include "uavsim/trainer.hpp"

namespace uavsim {

struct ExperimentSetup {
    EnvConfig env;
    TrainConfig train;
    Algo algo = Algo::Mdqn;
    BaselineKind baseline = BaselineKind::None;
    std::uint64_t seed = 1;
};

struct TrainOutcome {
    std::vector<EpisodeStats> episodes;
    std::vector<LossEntry> losses;
    std::vector<Mlp> nets;  // one entry in mutual mode, one per agent otherwise
    ConstraintAudit audit;
};

// Full training phase for one cell of an experiment matrix.
TrainOutcome train_run(const ExperimentSetup& setup);

struct EvalOutcome {
    std::vector<EvalResult> episodes;
    double mean_throughput = 0.0;
    double mean_violation_rate = 0.0;
    ConstraintAudit audit;
};

// Greedy (or baseline-policy) evaluation episodes. `nets` is ignored for the
// non-learned baselines; `disable_recluster` evaluates a trained model with
// the periodic re-partition switched off.
EvalOutcome eval_run(const ExperimentSetup& setup, const std::vector<Mlp>& nets, int episodes,
                     std::uint64_t eval_seed, bool disable_recluster = false);

}  // namespace uavsim
