#pragma once

#include <optional>
#include <vector>

namespace uavsim {

// gain[u][k]: linear power gain of the link between UAV u and user k at the
// current slot. Every pair is filled, not just serving links, because
// inter-cluster interference needs the cross gains.
using GainMatrix = std::vector<std::vector<double>>;

// Per-UAV downlink power split. watts[k] is zero for users the UAV does not
// serve; the sum over served users never exceeds budget.
struct PowerAllocation {
    std::vector<double> watts;
    double budget = 0.0;

    double total() const;
};

struct UserRate {
    int user = 0;
    double sinr = 0.0;     // linear
    double rate = 0.0;     // bit/s
    double desired_w = 0.0;
    double intra_w = 0.0;  // interference left after cancellation
    double inter_w = 0.0;  // interference from other clusters
};

struct RateReport {
    std::vector<UserRate> users;       // in decoding order
    std::vector<int> decoding_order;   // user ids, ascending equivalent gain
    double sum_rate = 0.0;             // bit/s
};

// Received interference power at user k from every UAV except u.
double inter_cluster_interference(int user, int uav, const GainMatrix& gains,
                                  const std::vector<double>& uav_total_power);

// Equivalent channel gain: own gain over (cross-cluster interference + noise).
// Ranks users for successive cancellation.
double equivalent_gain(int user, int uav, const GainMatrix& gains,
                       const std::vector<double>& uav_total_power, double sigma2_w);

// Ascending sort by equivalent gain; ties break to the lower user id.
std::vector<int> decoding_order(const std::vector<int>& users,
                                const std::vector<double>& eq_gain_by_user);

// Full superposition-coding rate computation for one cluster. Each receiver
// cancels the signals of everyone ordered before it and keeps the later
// (stronger-ranked) signals as interference over its own channel. A frozen
// order can be supplied instead of re-ranking by current equivalent gain.
RateReport cluster_rates_noma(const std::vector<int>& users, int uav, const GainMatrix& gains,
                              const std::vector<PowerAllocation>& powers, double sigma2_w,
                              double bandwidth_hz,
                              const std::optional<std::vector<int>>& fixed_order = std::nullopt);

// Time-division reference: each user gets the whole budget for a 1/K slice of
// the slot, with no intra-cluster interference.
RateReport cluster_rates_oma(const std::vector<int>& users, int uav, const GainMatrix& gains,
                             const std::vector<PowerAllocation>& powers, double sigma2_w,
                             double bandwidth_hz);

double shannon_rate(double sinr, double bandwidth_hz);

// Serving-period throughput, one term per logged slot.
double throughput(const std::vector<double>& slot_sum_rates);

}  // namespace uavsim
