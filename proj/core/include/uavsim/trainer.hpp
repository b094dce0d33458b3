#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "uavsim/env.hpp"

namespace uavsim {

struct TrainConfig {
    int episodes = 300;
    double learning_rate = 1e-3;
    double discount = 0.9;
    int batch = 32;
    long buffer_capacity = 20000;
    int target_sync = 200;
    double eps_start = 0.9;
    int eval_episodes = 20;

    void validate() const;
};

enum class Algo { Mdqn, Independent };

struct LossEntry {
    long step = 0;  // global gradient-update counter across all learners
    double loss = 0.0;
};

struct EpisodeStats {
    int episode = 0;
    double throughput = 0.0;      // sum of slot sum-rates, bit/s per slot
    double violation_rate = 0.0;  // QoS misses over served user-slots
    double epsilon = 0.0;
    double mean_loss = 0.0;
};

ActionCatalog make_catalog(const EnvConfig& config, const ModeFlags& flags, bool allow_vertical);

// Runs the per-slot loop: every agent ranks its cluster, reads its shuffled
// observation, picks an epsilon-greedy action, and after the joint step
// stores its transition and performs one gradient update. In mutual mode all
// agents feed one replay buffer and one network pair; in independent mode
// each agent keeps its own.
class Trainer {
  public:
    Trainer(const EnvConfig& env_config, const ModeFlags& flags, TrainConfig train, Algo algo,
            std::uint64_t master_seed, bool allow_vertical = true);

    EpisodeStats run_training_episode(Environment& env, int episode);

    Algo algo() const { return algo_; }
    const ActionCatalog& catalog() const { return catalog_; }
    int pair_count() const { return static_cast<int>(pairs_.size()); }
    const QNetPair& pair(int index) const { return pairs_[index]; }
    const Mlp& policy_net(int agent) const { return pairs_[pair_index(agent)].eval; }
    const ReplayBuffer& buffer(int index) const { return buffers_[index]; }
    const std::vector<LossEntry>& loss_log() const { return loss_log_; }
    const EpsilonSchedule& schedule() const { return schedule_; }

  private:
    int pair_index(int agent) const { return algo_ == Algo::Mdqn ? 0 : agent; }
    std::vector<std::vector<double>> observations(const Environment& env) const;

    TrainConfig train_;
    Algo algo_;
    int uav_count_;
    ActionCatalog catalog_;
    EpsilonSchedule schedule_;
    std::vector<QNetPair> pairs_;
    std::vector<ReplayBuffer> buffers_;
    std::vector<Rng> samplers_;
    Rng policy_rng_;
    TrainScratch scratch_;
    std::vector<LossEntry> loss_log_;
    long global_step_ = 0;
};

// Joint controllers for evaluation episodes and non-learned baselines.
class JointPolicy {
  public:
    virtual ~JointPolicy() = default;
    virtual void begin_episode(const Environment& env, int episode) { (void)env; (void)episode; }
    virtual std::vector<AgentCommand> act(const Environment& env) = 0;
};

// Greedy argmax over a trained network (one shared, or one per agent).
class GreedyNetPolicy : public JointPolicy {
  public:
    GreedyNetPolicy(std::vector<Mlp> nets, const ActionCatalog& catalog);

    std::vector<AgentCommand> act(const Environment& env) override;

  private:
    std::vector<Mlp> nets_;
    const ActionCatalog& catalog_;
};

// Uniform random valid action each slot.
class RandomPolicy : public JointPolicy {
  public:
    RandomPolicy(const ActionCatalog& catalog, std::uint64_t seed);

    void begin_episode(const Environment& env, int episode) override;
    std::vector<AgentCommand> act(const Environment& env) override;

  private:
    const ActionCatalog& catalog_;
    std::uint64_t seed_;
    Rng rng_;
};

struct EvalResult {
    double throughput = 0.0;
    double violation_rate = 0.0;
    std::vector<SlotLog> slots;
};

EvalResult run_policy_episode(Environment& env, JointPolicy& policy, int episode);

}  // namespace uavsim
