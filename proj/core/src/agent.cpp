#include "uavsim/agent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace uavsim {

double EpsilonSchedule::at(int episode) const {
    const int denom = std::max(total_episodes - 1, 1);
    const double eps = start * (1.0 - static_cast<double>(episode) / denom);
    return std::clamp(eps, 0.0, start);
}

ActionCatalog::ActionCatalog(std::vector<double> gear_fractions, int user_slots,
                             bool allow_vertical)
    : gear_fractions_(std::move(gear_fractions)),
      user_slots_(user_slots),
      allow_vertical_(allow_vertical) {
    if (user_slots_ < 1) throw std::invalid_argument("ActionCatalog: user_slots must be >= 1");
    combo_count_ = 1;
    if (!gear_fractions_.empty()) {
        for (int i = 0; i < user_slots_; ++i) {
            combo_count_ *= static_cast<int>(gear_fractions_.size());
        }
    }

    budget_.assign(user_slots_ + 1, std::vector<double>(size(), 0.0));
    masks_.assign(user_slots_ + 1, std::vector<std::uint8_t>(size(), 0));
    for (int served = 0; served <= user_slots_; ++served) {
        for (int a = 0; a < size(); ++a) {
            double total = 0.0;
            if (!gear_fractions_.empty()) {
                const std::vector<int> gears = gears_of(a);
                for (int i = 0; i < served; ++i) total += gear_fractions_[gears[i]];
            } else {
                total = 1.0;
            }
            budget_[served][a] = total;
            bool ok = total <= 1.0 + 1e-12;
            if (!allow_vertical_) {
                const MoveAction m = move_of(a);
                if (m == MoveAction::Up || m == MoveAction::Down) ok = false;
            }
            masks_[served][a] = ok ? 1 : 0;
        }
    }
}

std::vector<int> ActionCatalog::gears_of(int action) const {
    std::vector<int> gears(user_slots_, 0);
    if (gear_fractions_.empty()) return gears;
    int combo = action % combo_count_;
    const int base = static_cast<int>(gear_fractions_.size());
    for (int i = 0; i < user_slots_; ++i) {
        gears[i] = combo % base;
        combo /= base;
    }
    return gears;
}

double ActionCatalog::budget_fraction(int action, int served_users) const {
    return budget_[std::clamp(served_users, 0, user_slots_)][action];
}

const std::vector<std::uint8_t>& ActionCatalog::mask_for(int served_users) const {
    return masks_[std::clamp(served_users, 0, user_slots_)];
}

int ActionCatalog::valid_count(int served_users) const {
    const auto& m = mask_for(served_users);
    int n = 0;
    for (std::uint8_t v : m) n += v;
    return n;
}

AgentCommand ActionCatalog::command(int action, int served_users) const {
    AgentCommand cmd;
    cmd.action_index = action;
    cmd.move = move_of(action);
    if (!gear_fractions_.empty()) {
        const std::vector<int> gears = gears_of(action);
        cmd.power_fractions.resize(std::min(served_users, user_slots_));
        for (std::size_t i = 0; i < cmd.power_fractions.size(); ++i) {
            cmd.power_fractions[i] = gear_fractions_[gears[i]];
        }
    }
    return cmd;
}

std::vector<double> scale_position(const UavState& uav, const AreaBounds& area) {
    return {(uav.x - area.x_min) / (area.x_max - area.x_min),
            (uav.y - area.y_min) / (area.y_max - area.y_min),
            (uav.h - area.h_min) / (area.h_max - area.h_min)};
}

double scale_gain(double gain_linear) {
    if (gain_linear <= 0.0) return 0.0;
    const double db = 10.0 * std::log10(gain_linear);
    return std::clamp((db + 130.0) / 60.0, 0.0, 1.0);
}

int observation_size(int uav_count, int user_slots) {
    return 3 + 3 * (uav_count - 1) + uav_count * user_slots;
}

std::vector<double> build_observation(int agent, const std::vector<UavState>& uavs,
                                      const AreaBounds& area,
                                      const std::vector<std::vector<double>>& serving_gains,
                                      int user_slots) {
    const int uav_count = static_cast<int>(uavs.size());
    std::vector<double> obs;
    obs.reserve(observation_size(uav_count, user_slots));

    auto append_position = [&](int u) {
        for (double v : scale_position(uavs[u], area)) obs.push_back(v);
    };
    auto append_gains = [&](int u) {
        std::vector<double> g = serving_gains[u];
        std::sort(g.begin(), g.end(), std::greater<double>());
        g.resize(user_slots, 0.0);
        for (double v : g) obs.push_back(scale_gain(v));
    };

    append_position(agent);
    for (int u = 0; u < uav_count; ++u) {
        if (u != agent) append_position(u);
    }
    append_gains(agent);
    for (int u = 0; u < uav_count; ++u) {
        if (u != agent) append_gains(u);
    }
    return obs;
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("ReplayBuffer: capacity must be positive");
    store_.reserve(capacity_);
}

void ReplayBuffer::push(Transition t) {
    if (store_.size() < capacity_) {
        store_.push_back(std::move(t));
    } else {
        store_[next_] = std::move(t);
    }
    next_ = (next_ + 1) % capacity_;
}

const Transition& ReplayBuffer::sample(Rng& rng) const {
    return store_[rng.uniform_int(static_cast<int>(store_.size()))];
}

int argmax_masked(const std::vector<double>& q_values, const std::vector<std::uint8_t>& mask) {
    int best = -1;
    double best_q = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < q_values.size(); ++a) {
        if (mask[a] && q_values[a] > best_q) {
            best_q = q_values[a];
            best = static_cast<int>(a);
        }
    }
    return best;
}

double max_masked(const std::vector<double>& q_values, const std::vector<std::uint8_t>& mask) {
    return q_values[argmax_masked(q_values, mask)];
}

int select_action(const std::vector<double>& q_values, double epsilon,
                  const std::vector<std::uint8_t>& mask, Rng& rng) {
    if (rng.uniform() < epsilon) {
        int valid = 0;
        for (std::uint8_t m : mask) valid += m;
        int pick = rng.uniform_int(valid);
        for (std::size_t a = 0; a < mask.size(); ++a) {
            if (mask[a] && pick-- == 0) return static_cast<int>(a);
        }
    }
    return argmax_masked(q_values, mask);
}

QNetPair QNetPair::init(const std::vector<int>& sizes, double lr, Rng& rng) {
    QNetPair pair;
    pair.eval = Mlp::init(sizes, rng);
    pair.target = copy_weights(pair.eval);
    pair.adam = AdamState::like(pair.eval, lr);
    return pair;
}

double train_step(QNetPair& nets, const ReplayBuffer& buffer, int batch, double discount,
                  const ActionCatalog& catalog, Rng& sampler, TrainScratch& scratch) {
    bool shape_ok = scratch.grads.weights.size() == nets.eval.weights.size();
    for (std::size_t l = 0; shape_ok && l < nets.eval.weights.size(); ++l) {
        shape_ok = scratch.grads.weights[l].size() == nets.eval.weights[l].size();
    }
    if (!shape_ok) scratch.grads = Gradients::zeros_like(nets.eval);
    scratch.grads.clear();

    double loss = 0.0;
    for (int i = 0; i < batch; ++i) {
        const Transition& t = buffer.sample(sampler);
        forward_into(nets.target, t.next_state, scratch.mlp);
        const double best_next =
            max_masked(scratch.mlp.act.back(), catalog.mask_for(t.next_served));
        const double y = t.reward + discount * best_next;

        backward_accumulate(nets.eval, t.state, t.action, y, scratch.mlp, scratch.grads);
        const double err = y - scratch.mlp.act.back()[t.action];
        loss += err * err;
    }
    scratch.grads.scale(1.0 / batch);
    adam_step(nets.eval, nets.adam, scratch.grads);
    nets.updates++;
    return loss / batch;
}

void sync_target(QNetPair& nets) { nets.target = copy_weights(nets.eval); }

}  // namespace uavsim
