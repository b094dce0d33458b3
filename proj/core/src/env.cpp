#include "uavsim/env.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uavsim {

int EnvConfig::effective_cap() const {
    if (cluster_cap > 0) return cluster_cap;
    return (user_count + uav_count - 1) / uav_count;
}

void EnvConfig::validate() const {
    if (uav_count < 1) throw std::invalid_argument("config: uav_count must be at least 1");
    if (user_count < 1) throw std::invalid_argument("config: user_count must be at least 1");
    if (area.x_min >= area.x_max || area.y_min >= area.y_max) {
        throw std::invalid_argument("config: area bounds are empty");
    }
    if (area.h_min < 10.0) {
        throw std::invalid_argument("config: h_min below the 10 m channel-model floor");
    }
    if (area.h_min >= area.h_max) throw std::invalid_argument("config: h_min must be below h_max");
    if (initial_height < area.h_min || initial_height > area.h_max) {
        throw std::invalid_argument("config: initial_height outside [h_min, h_max]");
    }
    if (dt <= 0.0) throw std::invalid_argument("config: dt must be positive");
    if (slots < 0) throw std::invalid_argument("config: slots must be non-negative");
    if (recluster_period < 1) {
        throw std::invalid_argument("config: recluster_period must be at least 1");
    }
    if (recluster_period > std::max(slots, 1)) {
        throw std::invalid_argument("config: recluster_period exceeds the episode length");
    }
    if (uav_power_w <= 0.0) throw std::invalid_argument("config: uav_power_w must be positive");
    if (bandwidth_hz <= 0.0) throw std::invalid_argument("config: bandwidth_hz must be positive");
    if (channel.fc_ghz <= 0.0) throw std::invalid_argument("config: carrier_ghz must be positive");
    if (r_qos_bps < 0.0) throw std::invalid_argument("config: r_qos_bps must be non-negative");
    if (uav_speed <= 0.0) throw std::invalid_argument("config: uav_speed must be positive");
    if (user_vmax < 0.0) throw std::invalid_argument("config: user_vmax must be non-negative");
    if (gear_fractions.empty()) throw std::invalid_argument("config: gears must not be empty");
    for (double g : gear_fractions) {
        if (g <= 0.0 || g > 1.0) {
            throw std::invalid_argument("config: every gear fraction must lie in (0, 1]");
        }
    }
    if (static_cast<long long>(uav_count) * effective_cap() < user_count) {
        throw std::invalid_argument("config: uav_count * cluster_cap cannot cover user_count");
    }
    if (lambda_max < 0) throw std::invalid_argument("config: lambda_max must be non-negative");
    if (qos_recovery_window < 1) {
        throw std::invalid_argument("config: qos_recovery_window must be at least 1");
    }
}

void ConstraintAudit::accumulate(const ConstraintAudit& other) {
    bounds += other.bounds;
    serving += other.serving;
    power += other.power;
    decoding += other.decoding;
}

std::vector<std::vector<double>> WorldState::serving_gains() const {
    std::vector<std::vector<double>> out(members.size());
    for (std::size_t u = 0; u < members.size(); ++u) {
        out[u].reserve(members[u].size());
        for (int k : members[u]) out[u].push_back(gains[u][k]);
    }
    return out;
}

double qos_penalized_reward(double rate_bps, bool violated, PenaltyState& penalty,
                            int lambda_max, int recovery_window) {
    if (violated) {
        penalty.lambda = std::min(penalty.lambda + 1, lambda_max);
        penalty.clean_streak = 0;
    } else {
        penalty.clean_streak++;
        if (penalty.clean_streak >= recovery_window) {
            penalty.lambda = std::max(penalty.lambda - 1, 0);
            penalty.clean_streak = 0;
        }
    }
    const double scaled = rate_bps / 1e6;
    return scaled / std::pow(2.0, penalty.lambda);
}

Environment::Environment(EnvConfig config, ModeFlags flags, std::uint64_t master_seed)
    : config_(std::move(config)),
      flags_(flags),
      master_seed_(master_seed),
      mobility_rng_(0),
      fading_rng_(0),
      cluster_rng_(0) {
    config_.validate();
}

const WorldState& Environment::reset(int episode) {
    episode_ = episode;
    mobility_rng_ = Rng(derive_seed(master_seed_, streams::kMobility, episode));
    fading_rng_ = Rng(derive_seed(master_seed_, streams::kFading, episode));
    cluster_rng_ = Rng(derive_seed(master_seed_, streams::kCluster, episode));
    Rng placement(derive_seed(master_seed_, streams::kPlacement, episode));

    world_ = WorldState{};
    world_.slot = 0;

    world_.users.resize(config_.user_count);
    for (int k = 0; k < config_.user_count; ++k) {
        UserState& u = world_.users[k];
        u.id = k;
        u.x = placement.uniform(config_.area.x_min, config_.area.x_max);
        u.y = placement.uniform(config_.area.y_min, config_.area.y_max);
        u.model = config_.mobility;
        u.theta_fixed = placement.uniform(0.0, 2.0 * 3.14159265358979323846);
    }

    // UAVs start evenly spread along the area boundary, counter-clockwise
    // from the south-west corner.
    world_.uavs.resize(config_.uav_count);
    const double w = config_.area.x_max - config_.area.x_min;
    const double d = config_.area.y_max - config_.area.y_min;
    const double perimeter = 2.0 * (w + d);
    for (int u = 0; u < config_.uav_count; ++u) {
        UavState& uav = world_.uavs[u];
        uav.id = u;
        uav.h = config_.initial_height;
        uav.speed = config_.uav_speed;
        double s = (u + 0.5) * perimeter / config_.uav_count;
        if (s < w) {
            uav.x = config_.area.x_min + s;
            uav.y = config_.area.y_min;
        } else if (s < w + d) {
            uav.x = config_.area.x_max;
            uav.y = config_.area.y_min + (s - w);
        } else if (s < 2.0 * w + d) {
            uav.x = config_.area.x_max - (s - w - d);
            uav.y = config_.area.y_max;
        } else {
            uav.x = config_.area.x_min;
            uav.y = config_.area.y_max - (s - 2.0 * w - d);
        }
    }

    world_.penalty.assign(config_.uav_count, PenaltyState{});
    audit_ = ConstraintAudit{};

    recluster(0);
    equal_split_powers();
    refresh_gains();
    refresh_decoding(true);
    compute_rates();
    run_audit();
    log_ = make_log(true);
    for (int u = 0; u < config_.uav_count; ++u) {
        for (const UserRate& ur : world_.reports[u].users) {
            if (ur.rate < config_.r_qos_bps) log_.qos_violations++;
        }
    }
    return world_;
}

void Environment::recluster(int slot) {
    std::vector<Point2> points;
    points.reserve(world_.users.size());
    for (const UserState& u : world_.users) points.push_back({u.x, u.y});

    ClusterAssignment raw = kmeans_capped(points, config_.uav_count, config_.effective_cap(),
                                          cluster_rng_);
    raw.epoch = slot;
    world_.assignment = associate_with_uavs(raw, world_.uavs);
    world_.members = world_.assignment.members();
}

void Environment::refresh_gains() {
    const int U = config_.uav_count;
    const int K = config_.user_count;
    world_.gains.assign(U, std::vector<double>(K, 0.0));
    for (int u = 0; u < U; ++u) {
        for (int k = 0; k < K; ++k) {
            const double fade = draw_fading(config_.channel.fading, fading_rng_);
            world_.gains[u][k] =
                sample_channel(world_.uavs[u], world_.users[k], config_.channel, fade)
                    .gain_linear;
        }
    }
}

void Environment::equal_split_powers() {
    world_.powers.assign(config_.uav_count, PowerAllocation{});
    for (int u = 0; u < config_.uav_count; ++u) {
        PowerAllocation& p = world_.powers[u];
        p.budget = config_.uav_power_w;
        p.watts.assign(config_.user_count, 0.0);
        const int served = world_.served_count(u);
        if (served == 0) continue;
        for (int k : world_.members[u]) {
            p.watts[k] = config_.uav_power_w / served;
        }
    }
}

void Environment::apply_powers(const std::vector<AgentCommand>& commands) {
    if (flags_.oma || flags_.equal_power) {
        // Bookkeeping split; time-division rates read the budget directly.
        equal_split_powers();
        return;
    }
    world_.powers.assign(config_.uav_count, PowerAllocation{});
    for (int u = 0; u < config_.uav_count; ++u) {
        PowerAllocation& p = world_.powers[u];
        p.budget = config_.uav_power_w;
        p.watts.assign(config_.user_count, 0.0);

        // Rank the served users by current gain, strongest first, to line up
        // with both the observation layout and the gear slots.
        std::vector<int> ranked = world_.members[u];
        std::sort(ranked.begin(), ranked.end(), [&](int a, int b) {
            if (world_.gains[u][a] != world_.gains[u][b]) {
                return world_.gains[u][a] > world_.gains[u][b];
            }
            return a < b;
        });
        // A re-cluster can grow the cluster between action choice and rate
        // computation; uncovered ranks share whatever budget is left.
        const std::vector<double>& fractions = commands[u].power_fractions;
        const std::size_t covered = std::min(fractions.size(), ranked.size());
        double used = 0.0;
        for (std::size_t i = 0; i < covered; ++i) used += fractions[i];
        const std::size_t uncovered = ranked.size() - covered;
        const double leftover =
            uncovered > 0 ? std::max(0.0, 1.0 - used) / static_cast<double>(uncovered) : 0.0;
        for (std::size_t i = 0; i < ranked.size(); ++i) {
            const double frac = i < covered ? fractions[i] : leftover;
            p.watts[ranked[i]] = frac * config_.uav_power_w;
        }
    }
}

void Environment::refresh_decoding(bool epoch_start) {
    const int U = config_.uav_count;
    world_.decode_order.assign(U, {});

    std::vector<double> totals(U, 0.0);
    for (int u = 0; u < U; ++u) totals[u] = world_.powers[u].total();
    if (flags_.static_decoding && epoch_start) frozen_order_.assign(U, {});

    for (int u = 0; u < U; ++u) {
        if (world_.members[u].empty()) continue;
        if (flags_.static_decoding) {
            if (epoch_start) {
                // Frozen by raw gain at the epoch start.
                std::vector<double> key(config_.user_count, 0.0);
                for (int k : world_.members[u]) key[k] = world_.gains[u][k];
                frozen_order_[u] = decoding_order(world_.members[u], key);
            }
            world_.decode_order[u] = frozen_order_[u];
            continue;
        }
        std::vector<double> key(config_.user_count, 0.0);
        for (int k : world_.members[u]) {
            key[k] = equivalent_gain(k, u, world_.gains, totals, config_.sigma2_w());
        }
        world_.decode_order[u] = decoding_order(world_.members[u], key);
    }
}

void Environment::compute_rates() {
    const int U = config_.uav_count;
    world_.reports.assign(U, RateReport{});
    world_.sum_rate = 0.0;
    for (int u = 0; u < U; ++u) {
        if (world_.members[u].empty()) continue;
        if (flags_.oma) {
            world_.reports[u] =
                cluster_rates_oma(world_.members[u], u, world_.gains, world_.powers,
                                  config_.sigma2_w(), config_.bandwidth_hz);
        } else {
            world_.reports[u] =
                cluster_rates_noma(world_.members[u], u, world_.gains, world_.powers,
                                   config_.sigma2_w(), config_.bandwidth_hz,
                                   world_.decode_order[u]);
        }
        world_.sum_rate += world_.reports[u].sum_rate;
    }
}

void Environment::run_audit() {
    for (const UavState& uav : world_.uavs) {
        if (!config_.area.contains_volume(uav.x, uav.y, uav.h)) audit_.bounds++;
    }
    for (const UserState& user : world_.users) {
        if (!config_.area.contains_ground(user.x, user.y)) audit_.bounds++;
    }
    std::vector<int> served(config_.user_count, 0);
    for (int u = 0; u < config_.uav_count; ++u) {
        for (int k : world_.members[u]) served[k]++;
    }
    for (int c : served) {
        if (c != 1) audit_.serving++;
    }
    for (const PowerAllocation& p : world_.powers) {
        if (p.total() > p.budget * (1.0 + 1e-9)) audit_.power++;
    }
    if (!flags_.static_decoding) {
        std::vector<double> totals(config_.uav_count, 0.0);
        for (int u = 0; u < config_.uav_count; ++u) totals[u] = world_.powers[u].total();
        for (int u = 0; u < config_.uav_count; ++u) {
            const std::vector<int>& order = world_.decode_order[u];
            double prev = -1.0;
            for (int k : order) {
                const double g =
                    equivalent_gain(k, u, world_.gains, totals, config_.sigma2_w());
                if (g < prev) audit_.decoding++;
                prev = g;
            }
        }
    }
}

SlotLog Environment::make_log(bool reclustered) const {
    SlotLog log;
    log.slot = world_.slot;
    log.sum_rate = world_.sum_rate;
    log.user_rate.assign(config_.user_count, 0.0);
    log.cluster_rate.assign(config_.uav_count, 0.0);
    for (int u = 0; u < config_.uav_count; ++u) {
        log.cluster_rate[u] = world_.reports[u].sum_rate;
        for (const UserRate& ur : world_.reports[u].users) log.user_rate[ur.user] = ur.rate;
    }
    log.action.assign(config_.uav_count, -1);
    log.reward.assign(config_.uav_count, 0.0);
    log.lambda.resize(config_.uav_count);
    for (int u = 0; u < config_.uav_count; ++u) log.lambda[u] = world_.penalty[u].lambda;
    for (const UavState& uav : world_.uavs) log.uav_pos.push_back({uav.x, uav.y, uav.h});
    for (const UserState& user : world_.users) log.user_pos.push_back({user.x, user.y});
    log.serving = world_.assignment.cluster_of;
    log.reclustered = reclustered;
    return log;
}

StepResult Environment::step(const std::vector<AgentCommand>& commands) {
    if (static_cast<int>(commands.size()) != config_.uav_count) {
        throw std::invalid_argument("step: expected one command per UAV");
    }

    // 1. agents move
    for (int u = 0; u < config_.uav_count; ++u) {
        world_.uavs[u] = move_uav(world_.uavs[u], commands[u].move, config_.dt, config_.area);
    }
    // 2. users move
    for (UserState& user : world_.users) {
        user = step_user(user, config_.user_vmax, config_.dt, config_.area, mobility_rng_);
    }
    // 3. scheduled re-partition
    world_.slot++;
    const bool reclustered =
        flags_.recluster && recluster_due(world_.slot, config_.recluster_period);
    if (reclustered) recluster(world_.slot);
    // 4.-6. new channel state, power split, cancellation order, rates
    refresh_gains();
    apply_powers(commands);
    refresh_decoding(reclustered);
    compute_rates();
    // 7.-8. per-agent QoS accounting and penalized rewards
    StepResult result;
    result.rewards.assign(config_.uav_count, 0.0);
    int violations_total = 0;
    std::vector<bool> violated(config_.uav_count, false);
    for (int u = 0; u < config_.uav_count; ++u) {
        for (const UserRate& ur : world_.reports[u].users) {
            if (ur.rate < config_.r_qos_bps) {
                violated[u] = true;
                violations_total++;
            }
        }
    }
    for (int u = 0; u < config_.uav_count; ++u) {
        const double rate = config_.reward_scope == RewardScope::Global
                                ? world_.sum_rate
                                : world_.reports[u].sum_rate;
        result.rewards[u] =
            qos_penalized_reward(rate, violated[u], world_.penalty[u], config_.lambda_max,
                                 config_.qos_recovery_window);
    }

    run_audit();
    log_ = make_log(reclustered);
    log_.qos_violations = violations_total;
    for (int u = 0; u < config_.uav_count; ++u) {
        log_.action[u] = commands[u].action_index;
        log_.reward[u] = result.rewards[u];
    }
    result.log = log_;
    return result;
}

}  // namespace uavsim
