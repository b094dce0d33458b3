#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "uavsim/agent.hpp"
#include "uavsim/channel.hpp"
#include "uavsim/clustering.hpp"
#include "uavsim/mobility.hpp"
#include "uavsim/noma.hpp"

namespace uavsim {

enum class RewardScope { OwnCluster, Global };

struct EnvConfig {
    int uav_count = 3;
    int user_count = 6;
    AreaBounds area;
    double dt = 0.5;              // seconds per slot
    int slots = 200;              // T: steps per episode (slots 0..T are logged)
    int recluster_period = 50;    // T_r
    double uav_power_w = 0.5;     // per-UAV transmit budget
    double bandwidth_hz = 1e6;    // per-UAV band, reused by all UAVs
    ChannelParams channel;
    double r_qos_bps = 1e5;
    double uav_speed = 10.0;
    double user_vmax = 2.0;
    MobilityModel mobility = MobilityModel::RandomRoam;
    std::vector<double> gear_fractions = {0.1, 0.2, 0.3, 0.4};
    int cluster_cap = 0;  // 0: tightest uniform cap, ceil(K/U)
    double initial_height = 100.0;
    int lambda_max = 8;
    int qos_recovery_window = 20;
    RewardScope reward_scope = RewardScope::OwnCluster;

    int effective_cap() const;
    double sigma2_w() const { return channel.noise_watts(); }
    void validate() const;  // throws with a distinct message per violated constraint
};

// Baseline axes; the default is the full method.
struct ModeFlags {
    bool oma = false;              // time-division rates instead of superposition
    bool equal_power = false;      // fixed equal split, movement still chosen
    bool static_decoding = false;  // cancellation order frozen per re-cluster epoch
    bool recluster = true;
};

// QoS penalty accumulator of one agent. The exponent climbs one level per
// violating slot and relaxes one level per clean window, staying in
// [0, lambda_max].
struct PenaltyState {
    int lambda = 0;
    int clean_streak = 0;
};

struct SlotLog {
    int slot = 0;
    double sum_rate = 0.0;                        // bit/s over all clusters
    std::vector<double> user_rate;                // by user id
    std::vector<double> cluster_rate;             // by uav id
    std::vector<int> action;                      // catalog index per uav, -1 at slot 0
    std::vector<double> reward;                   // per uav, 0 at slot 0
    std::vector<int> lambda;                      // per uav, after the slot's update
    std::vector<std::array<double, 3>> uav_pos;   // x, y, h
    std::vector<std::array<double, 2>> user_pos;  // x, y
    std::vector<int> serving;                     // cluster_of per user
    int qos_violations = 0;                       // served users below QoS this slot
    bool reclustered = false;
};

// Hard-constraint audit accumulated over an episode; every counter stays at
// zero outside deliberately broken ablations.
struct ConstraintAudit {
    long bounds = 0;        // position outside the service volume
    long serving = 0;       // user not served by exactly one UAV
    long power = 0;         // power split above the budget
    long decoding = 0;      // cancellation order not ascending in equivalent gain

    long total() const { return bounds + serving + power + decoding; }
    void accumulate(const ConstraintAudit& other);
};

struct WorldState {
    int slot = 0;
    std::vector<UavState> uavs;
    std::vector<UserState> users;
    ClusterAssignment assignment;
    std::vector<std::vector<int>> members;        // uav -> user ids, ascending
    GainMatrix gains;                             // [uav][user], current slot
    std::vector<PowerAllocation> powers;          // current split per uav
    std::vector<std::vector<int>> decode_order;   // per uav, order in force
    std::vector<RateReport> reports;              // per uav, current slot
    double sum_rate = 0.0;
    std::vector<PenaltyState> penalty;

    // g of each cluster's served users, aligned with members; observation input
    std::vector<std::vector<double>> serving_gains() const;
    int served_count(int uav) const { return static_cast<int>(members[uav].size()); }
};

struct StepResult {
    std::vector<double> rewards;
    SlotLog log;
};

// Scales a cluster (or global) rate to Mbit/s and divides by 2^lambda after
// folding this slot's QoS outcome into the penalty state.
double qos_penalized_reward(double rate_bps, bool violated, PenaltyState& penalty,
                            int lambda_max, int recovery_window);

class Environment {
  public:
    Environment(EnvConfig config, ModeFlags flags, std::uint64_t master_seed);

    const WorldState& reset(int episode);
    StepResult step(const std::vector<AgentCommand>& commands);

    const WorldState& world() const { return world_; }
    const EnvConfig& config() const { return config_; }
    const ModeFlags& flags() const { return flags_; }
    const SlotLog& last_log() const { return log_; }
    const ConstraintAudit& audit() const { return audit_; }

  private:
    void recluster(int slot);
    void refresh_gains();
    void apply_powers(const std::vector<AgentCommand>& commands);
    void equal_split_powers();
    void refresh_decoding(bool epoch_start);
    void compute_rates();
    void run_audit();
    SlotLog make_log(bool reclustered) const;

    EnvConfig config_;
    ModeFlags flags_;
    std::uint64_t master_seed_ = 0;
    int episode_ = 0;
    Rng mobility_rng_;
    Rng fading_rng_;
    Rng cluster_rng_;
    WorldState world_;
    SlotLog log_;
    ConstraintAudit audit_;
    std::vector<std::vector<int>> frozen_order_;  // static-decoding epochs
};

}  // namespace uavsim
