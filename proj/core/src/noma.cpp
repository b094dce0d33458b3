#include "uavsim/noma.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace uavsim {

double PowerAllocation::total() const {
    return std::accumulate(watts.begin(), watts.end(), 0.0);
}

double inter_cluster_interference(int user, int uav, const GainMatrix& gains,
                                  const std::vector<double>& uav_total_power) {
    double acc = 0.0;
    for (std::size_t s = 0; s < gains.size(); ++s) {
        if (static_cast<int>(s) == uav) continue;
        acc += gains[s][user] * uav_total_power[s];
    }
    return acc;
}

double equivalent_gain(int user, int uav, const GainMatrix& gains,
                       const std::vector<double>& uav_total_power, double sigma2_w) {
    const double denom =
        inter_cluster_interference(user, uav, gains, uav_total_power) + sigma2_w;
    return gains[uav][user] / denom;
}

std::vector<int> decoding_order(const std::vector<int>& users,
                                const std::vector<double>& eq_gain_by_user) {
    std::vector<int> order = users;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (eq_gain_by_user[a] != eq_gain_by_user[b]) {
            return eq_gain_by_user[a] < eq_gain_by_user[b];
        }
        return a < b;
    });
    return order;
}

namespace {

std::vector<double> total_powers(const std::vector<PowerAllocation>& powers) {
    std::vector<double> totals(powers.size());
    for (std::size_t u = 0; u < powers.size(); ++u) totals[u] = powers[u].total();
    return totals;
}

}  // namespace

double shannon_rate(double sinr, double bandwidth_hz) {
    return bandwidth_hz * std::log2(1.0 + sinr);
}

RateReport cluster_rates_noma(const std::vector<int>& users, int uav, const GainMatrix& gains,
                              const std::vector<PowerAllocation>& powers, double sigma2_w,
                              double bandwidth_hz,
                              const std::optional<std::vector<int>>& fixed_order) {
    RateReport report;
    if (users.empty()) return report;

    const std::vector<double> totals = total_powers(powers);
    if (fixed_order) {
        report.decoding_order = *fixed_order;
    } else {
        std::vector<double> eq(gains[uav].size(), 0.0);
        for (int k : users) eq[k] = equivalent_gain(k, uav, gains, totals, sigma2_w);
        report.decoding_order = decoding_order(users, eq);
    }

    const std::vector<int>& order = report.decoding_order;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const int k = order[pos];
        UserRate ur;
        ur.user = k;
        ur.desired_w = gains[uav][k] * powers[uav].watts[k];
        // Signals ranked after this receiver stay un-cancelled and are heard
        // through the receiver's own channel.
        double later_power = 0.0;
        for (std::size_t i = pos + 1; i < order.size(); ++i) {
            later_power += powers[uav].watts[order[i]];
        }
        ur.intra_w = gains[uav][k] * later_power;
        ur.inter_w = inter_cluster_interference(k, uav, gains, totals);
        ur.sinr = ur.desired_w / (ur.intra_w + ur.inter_w + sigma2_w);
        ur.rate = shannon_rate(ur.sinr, bandwidth_hz);
        report.sum_rate += ur.rate;
        report.users.push_back(ur);
    }
    return report;
}

RateReport cluster_rates_oma(const std::vector<int>& users, int uav, const GainMatrix& gains,
                             const std::vector<PowerAllocation>& powers, double sigma2_w,
                             double bandwidth_hz) {
    RateReport report;
    if (users.empty()) return report;

    const std::vector<double> totals = total_powers(powers);
    const double share = 1.0 / static_cast<double>(users.size());

    std::vector<double> eq(gains[uav].size(), 0.0);
    for (int k : users) eq[k] = equivalent_gain(k, uav, gains, totals, sigma2_w);
    report.decoding_order = decoding_order(users, eq);

    for (int k : report.decoding_order) {
        UserRate ur;
        ur.user = k;
        ur.desired_w = gains[uav][k] * powers[uav].budget;
        ur.inter_w = inter_cluster_interference(k, uav, gains, totals);
        ur.sinr = ur.desired_w / (ur.inter_w + sigma2_w);
        ur.rate = share * shannon_rate(ur.sinr, bandwidth_hz);
        report.sum_rate += ur.rate;
        report.users.push_back(ur);
    }
    return report;
}

double throughput(const std::vector<double>& slot_sum_rates) {
    return std::accumulate(slot_sum_rates.begin(), slot_sum_rates.end(), 0.0);
}

}  // namespace uavsim
