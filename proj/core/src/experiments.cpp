#include "uavsim/experiments.hpp"

#include <memory>
#include <stdexcept>

namespace uavsim {

TrainOutcome train_run(const ExperimentSetup& setup) {
    const ModeBundle mode = resolve_mode(setup.baseline);
    if (!mode.trainable) {
        throw std::invalid_argument("train_run: baseline '" + baseline_name(setup.baseline) +
                                    "' has no training phase");
    }
    Environment env(setup.env, mode.flags, setup.seed);
    Trainer trainer(setup.env, mode.flags, setup.train, setup.algo, setup.seed,
                    mode.allow_vertical);

    TrainOutcome outcome;
    for (int ep = 0; ep < setup.train.episodes; ++ep) {
        outcome.episodes.push_back(trainer.run_training_episode(env, ep));
        outcome.audit.accumulate(env.audit());
    }
    outcome.losses = trainer.loss_log();
    for (int i = 0; i < trainer.pair_count(); ++i) {
        outcome.nets.push_back(copy_weights(trainer.pair(i).eval));
    }
    return outcome;
}

EvalOutcome eval_run(const ExperimentSetup& setup, const std::vector<Mlp>& nets, int episodes,
                     std::uint64_t eval_seed, bool disable_recluster) {
    ModeBundle mode = resolve_mode(setup.baseline);
    if (disable_recluster) mode.flags.recluster = false;

    Environment env(setup.env, mode.flags, eval_seed);
    const ActionCatalog catalog = make_catalog(setup.env, mode.flags, mode.allow_vertical);

    std::unique_ptr<JointPolicy> policy;
    if (setup.baseline == BaselineKind::Circular) {
        policy = std::make_unique<CircularPolicy>(catalog);
    } else if (setup.baseline == BaselineKind::Random) {
        policy = std::make_unique<RandomPolicy>(catalog, eval_seed);
    } else {
        if (nets.empty()) throw std::invalid_argument("eval_run: trained networks required");
        const int expected_in = observation_size(setup.env.uav_count, catalog.user_slots());
        for (const Mlp& net : nets) {
            if (net.input_size() != expected_in || net.output_size() != catalog.size()) {
                throw std::invalid_argument(
                    "eval_run: checkpoint dimensions do not match this configuration");
            }
        }
        policy = std::make_unique<GreedyNetPolicy>(nets, catalog);
    }

    EvalOutcome outcome;
    for (int ep = 0; ep < episodes; ++ep) {
        outcome.episodes.push_back(run_policy_episode(env, *policy, ep));
        outcome.mean_throughput += outcome.episodes.back().throughput;
        outcome.mean_violation_rate += outcome.episodes.back().violation_rate;
        outcome.audit.accumulate(env.audit());
    }
    if (episodes > 0) {
        outcome.mean_throughput /= episodes;
        outcome.mean_violation_rate /= episodes;
    }
    return outcome;
}

}  // namespace uavsim
