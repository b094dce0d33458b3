#include "uavsim/trainer.hpp"

#include <stdexcept>

namespace uavsim {

void TrainConfig::validate() const {
    if (episodes < 1) throw std::invalid_argument("train: episodes must be at least 1");
    if (learning_rate <= 0.0) throw std::invalid_argument("train: learning_rate must be positive");
    if (discount < 0.0 || discount >= 1.0) {
        throw std::invalid_argument("train: discount must lie in [0, 1)");
    }
    if (batch < 1) throw std::invalid_argument("train: batch must be at least 1");
    if (buffer_capacity < batch) {
        throw std::invalid_argument("train: buffer_capacity must be at least the batch size");
    }
    if (target_sync < 1) throw std::invalid_argument("train: target_sync must be at least 1");
    if (eps_start < 0.0 || eps_start > 1.0) {
        throw std::invalid_argument("train: eps_start must lie in [0, 1]");
    }
    if (eval_episodes < 1) throw std::invalid_argument("train: eval_episodes must be at least 1");
}

ActionCatalog make_catalog(const EnvConfig& config, const ModeFlags& flags, bool allow_vertical) {
    std::vector<double> gears;
    if (!flags.oma && !flags.equal_power) gears = config.gear_fractions;
    return ActionCatalog(std::move(gears), config.effective_cap(), allow_vertical);
}

Trainer::Trainer(const EnvConfig& env_config, const ModeFlags& flags, TrainConfig train,
                 Algo algo, std::uint64_t master_seed, bool allow_vertical)
    : train_(train),
      algo_(algo),
      uav_count_(env_config.uav_count),
      catalog_(make_catalog(env_config, flags, allow_vertical)),
      schedule_{train.eps_start, train.episodes},
      policy_rng_(derive_seed(master_seed, streams::kPolicy)) {
    train_.validate();
    const int pairs = algo_ == Algo::Mdqn ? 1 : uav_count_;
    const std::vector<int> sizes = {observation_size(uav_count_, catalog_.user_slots()), 40,
                                    catalog_.size()};
    for (int i = 0; i < pairs; ++i) {
        Rng init(derive_seed(master_seed, streams::kWeights, i));
        pairs_.push_back(QNetPair::init(sizes, train_.learning_rate, init));
        buffers_.emplace_back(static_cast<std::size_t>(train_.buffer_capacity));
        samplers_.emplace_back(derive_seed(master_seed, streams::kSampling, i));
    }
}

std::vector<std::vector<double>> Trainer::observations(const Environment& env) const {
    const WorldState& w = env.world();
    const std::vector<std::vector<double>> gains = w.serving_gains();
    std::vector<std::vector<double>> obs(uav_count_);
    for (int u = 0; u < uav_count_; ++u) {
        obs[u] = build_observation(u, w.uavs, env.config().area, gains, catalog_.user_slots());
    }
    return obs;
}

EpisodeStats Trainer::run_training_episode(Environment& env, int episode) {
    env.reset(episode);
    const double eps = schedule_.at(episode);

    EpisodeStats stats;
    stats.episode = episode;
    stats.epsilon = eps;
    stats.throughput = env.world().sum_rate;

    long violations = env.last_log().qos_violations;
    double loss_sum = 0.0;
    long loss_count = 0;

    std::vector<std::vector<double>> obs = observations(env);
    std::vector<AgentCommand> commands(uav_count_);
    std::vector<int> actions(uav_count_);

    for (int t = 1; t <= env.config().slots; ++t) {
        for (int u = 0; u < uav_count_; ++u) {
            const int served = env.world().served_count(u);
            forward_into(pairs_[pair_index(u)].eval, obs[u], scratch_.mlp);
            actions[u] =
                select_action(scratch_.mlp.act.back(), eps, catalog_.mask_for(served), policy_rng_);
            commands[u] = catalog_.command(actions[u], served);
        }

        const StepResult result = env.step(commands);
        std::vector<std::vector<double>> next_obs = observations(env);

        for (int u = 0; u < uav_count_; ++u) {
            Transition tr;
            tr.state = obs[u];
            tr.action = actions[u];
            tr.reward = result.rewards[u];
            tr.next_state = next_obs[u];
            tr.next_served = env.world().served_count(u);
            buffers_[pair_index(u)].push(std::move(tr));
        }
        for (int u = 0; u < uav_count_; ++u) {
            const int p = pair_index(u);
            if (buffers_[p].size() < static_cast<std::size_t>(train_.batch)) continue;
            const double loss = train_step(pairs_[p], buffers_[p], train_.batch, train_.discount,
                                           catalog_, samplers_[p], scratch_);
            loss_log_.push_back({++global_step_, loss});
            loss_sum += loss;
            loss_count++;
            if (pairs_[p].updates % train_.target_sync == 0) sync_target(pairs_[p]);
        }

        stats.throughput += env.world().sum_rate;
        violations += result.log.qos_violations;
        obs = std::move(next_obs);
    }

    const long served_slots =
        static_cast<long>(env.config().user_count) * (env.config().slots + 1);
    stats.violation_rate = static_cast<double>(violations) / served_slots;
    stats.mean_loss = loss_count > 0 ? loss_sum / loss_count : 0.0;
    return stats;
}

GreedyNetPolicy::GreedyNetPolicy(std::vector<Mlp> nets, const ActionCatalog& catalog)
    : nets_(std::move(nets)), catalog_(catalog) {
    if (nets_.empty()) throw std::invalid_argument("GreedyNetPolicy: need at least one network");
}

std::vector<AgentCommand> GreedyNetPolicy::act(const Environment& env) {
    const WorldState& w = env.world();
    const std::vector<std::vector<double>> gains = w.serving_gains();
    const int uav_count = env.config().uav_count;
    std::vector<AgentCommand> commands(uav_count);
    for (int u = 0; u < uav_count; ++u) {
        const Mlp& net = nets_[nets_.size() == 1 ? 0 : u];
        const std::vector<double> obs =
            build_observation(u, w.uavs, env.config().area, gains, catalog_.user_slots());
        const std::vector<double> q = net.forward(obs);
        const int served = w.served_count(u);
        const int action = argmax_masked(q, catalog_.mask_for(served));
        commands[u] = catalog_.command(action, served);
    }
    return commands;
}

RandomPolicy::RandomPolicy(const ActionCatalog& catalog, std::uint64_t seed)
    : catalog_(catalog), seed_(seed), rng_(seed) {}

void RandomPolicy::begin_episode(const Environment& env, int episode) {
    (void)env;
    rng_ = Rng(derive_seed(seed_, "random-policy", episode));
}

std::vector<AgentCommand> RandomPolicy::act(const Environment& env) {
    const int uav_count = env.config().uav_count;
    std::vector<AgentCommand> commands(uav_count);
    for (int u = 0; u < uav_count; ++u) {
        const int served = env.world().served_count(u);
        const auto& mask = catalog_.mask_for(served);
        int valid = 0;
        for (auto m : mask) valid += m;
        int pick = rng_.uniform_int(valid);
        int action = 0;
        for (std::size_t a = 0; a < mask.size(); ++a) {
            if (mask[a] && pick-- == 0) {
                action = static_cast<int>(a);
                break;
            }
        }
        commands[u] = catalog_.command(action, served);
    }
    return commands;
}

EvalResult run_policy_episode(Environment& env, JointPolicy& policy, int episode) {
    env.reset(episode);
    policy.begin_episode(env, episode);

    EvalResult result;
    result.slots.push_back(env.last_log());
    result.throughput = env.world().sum_rate;
    long violations = env.last_log().qos_violations;

    for (int t = 1; t <= env.config().slots; ++t) {
        const StepResult step = env.step(policy.act(env));
        result.slots.push_back(step.log);
        result.throughput += env.world().sum_rate;
        violations += step.log.qos_violations;
    }
    const long served_slots =
        static_cast<long>(env.config().user_count) * (env.config().slots + 1);
    result.violation_rate = static_cast<double>(violations) / served_slots;
    return result;
}

}  // namespace uavsim
