#pragma once

#include <cstdint>
#include <vector>

#include "uavsim/mobility.hpp"
#include "uavsim/neural.hpp"
#include "uavsim/rng.hpp"

namespace uavsim {

// Linearly decaying exploration rate, updated once per episode.
struct EpsilonSchedule {
    double start = 0.9;
    int total_episodes = 1;

    double at(int episode) const;
};

// A decoded action: one flight move plus one transmit-power fraction per
// served-user rank (strongest current gain first). An empty fraction list
// means the environment decides the split (equal shares or time division).
struct AgentCommand {
    int action_index = -1;
    MoveAction move = MoveAction::Hover;
    std::vector<double> power_fractions;
};

// Discrete joint action space: 7 flight moves crossed with one power gear per
// user rank. Gear combinations whose fractions sum past the budget are masked
// out rather than removed, so the network output width stays fixed. Masks are
// precomputed per cluster size; lookups are allocation-free.
class ActionCatalog {
  public:
    // An empty gear list collapses the power dimension to a single
    // environment-decided split (equal-power and time-division modes).
    ActionCatalog(std::vector<double> gear_fractions, int user_slots, bool allow_vertical);

    int size() const { return kMoveActionCount * combo_count_; }
    int combo_count() const { return combo_count_; }
    int user_slots() const { return user_slots_; }
    bool allow_vertical() const { return allow_vertical_; }

    MoveAction move_of(int action) const {
        return static_cast<MoveAction>(action / combo_count_);
    }
    std::vector<int> gears_of(int action) const;
    double budget_fraction(int action, int served_users) const;

    bool valid(int action, int served_users) const {
        return mask_for(served_users)[action] != 0;
    }
    const std::vector<std::uint8_t>& mask_for(int served_users) const;
    int valid_count(int served_users) const;

    AgentCommand command(int action, int served_users) const;

  private:
    std::vector<double> gear_fractions_;
    int user_slots_ = 0;
    int combo_count_ = 1;
    bool allow_vertical_ = true;
    std::vector<std::vector<double>> budget_;        // [served][action]
    std::vector<std::vector<std::uint8_t>> masks_;   // [served][action]
};

// Positions min-max scaled into [0,1] by the service volume.
std::vector<double> scale_position(const UavState& uav, const AreaBounds& area);

// Linear channel gain squashed into [0,1]: 10*log10(g) mapped over the
// [-130, -70] dB window that the simulated links actually span.
double scale_gain(double gain_linear);

// Fixed-layout observation for one agent: own position first, the other
// agents in ascending id, then each cluster's serving gains sorted strongest
// first and zero-padded to `user_slots`, own cluster ahead of the others.
// The fixed shuffle is what lets every agent share one network.
std::vector<double> build_observation(int agent, const std::vector<UavState>& uavs,
                                      const AreaBounds& area,
                                      const std::vector<std::vector<double>>& serving_gains,
                                      int user_slots);

int observation_size(int uav_count, int user_slots);

struct Transition {
    std::vector<double> state;
    int action = 0;
    double reward = 0.0;
    std::vector<double> next_state;
    int next_served = 0;  // cluster size at next_state, for masking the target max
};

// Fixed-capacity ring with uniform sampling.
class ReplayBuffer {
  public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(Transition t);
    std::size_t size() const { return store_.size(); }
    std::size_t capacity() const { return capacity_; }
    const Transition& sample(Rng& rng) const;

  private:
    std::size_t capacity_;
    std::size_t next_ = 0;
    std::vector<Transition> store_;
};

// Epsilon-greedy over the unmasked actions; greedy ties go to the lowest
// action index.
int select_action(const std::vector<double>& q_values, double epsilon,
                  const std::vector<std::uint8_t>& mask, Rng& rng);

int argmax_masked(const std::vector<double>& q_values, const std::vector<std::uint8_t>& mask);
double max_masked(const std::vector<double>& q_values, const std::vector<std::uint8_t>& mask);

// Evaluation/target network pair of one learner (shared by every agent in
// mutual mode, private per agent in independent mode).
struct QNetPair {
    Mlp eval;
    Mlp target;
    AdamState adam;
    long updates = 0;

    static QNetPair init(const std::vector<int>& sizes, double lr, Rng& rng);
};

// Reused buffers for the batched update.
struct TrainScratch {
    MlpScratch mlp;
    Gradients grads;
};

// One bootstrapped regression step on a uniform batch:
//   y = r + discount * max over valid a' of Q(s', a'; target)
// followed by a single Adam update on the mean squared error of the taken
// actions. Returns the batch loss.
double train_step(QNetPair& nets, const ReplayBuffer& buffer, int batch, double discount,
                  const ActionCatalog& catalog, Rng& sampler, TrainScratch& scratch);

void sync_target(QNetPair& nets);

}  // namespace uavsim
