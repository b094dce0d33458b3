#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "uavsim/noma.hpp"
#include "uavsim/rng.hpp"

using namespace uavsim;

namespace {

PowerAllocation make_power(std::vector<double> watts, double budget) {
    PowerAllocation p;
    p.watts = std::move(watts);
    p.budget = budget;
    return p;
}

}  // namespace

TEST_CASE("single UAV sees no inter-cluster interference") {
    GainMatrix gains = {{1e-10, 2e-10}};
    CHECK(inter_cluster_interference(0, 0, gains, {0.4}) == 0.0);
}

TEST_CASE("one interferer is a one-term product") {
    GainMatrix gains = {{1e-9, 1e-9}, {1e-10, 1e-10}};
    CHECK(inter_cluster_interference(0, 0, gains, {0.3, 0.4}) ==
          doctest::Approx(4e-11).epsilon(1e-12));
}

TEST_CASE("three-UAV interference matches a brute-force loop") {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        GainMatrix gains(3, std::vector<double>(4));
        std::vector<double> totals(3);
        for (auto& row : gains)
            for (double& g : row) g = rng.uniform(1e-12, 1e-8);
        for (double& t : totals) t = rng.uniform(0.0, 0.5);
        for (int k = 0; k < 4; ++k) {
            for (int u = 0; u < 3; ++u) {
                double expected = 0.0;
                for (int s = 0; s < 3; ++s) {
                    if (s != u) expected += gains[s][k] * totals[s];
                }
                REQUIRE(inter_cluster_interference(k, u, gains, totals) ==
                        doctest::Approx(expected).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("equivalent gain is a plain ratio without interferers") {
    GainMatrix gains = {{1e-10}};
    CHECK(equivalent_gain(0, 0, gains, {0.0}, 1e-12) == doctest::Approx(100.0));
}

TEST_CASE("stronger interferers shrink the equivalent gain") {
    GainMatrix gains = {{1e-10, 0.0}, {5e-11, 0.0}};
    const double base = equivalent_gain(0, 0, gains, {0.3, 0.2}, 1e-13);
    const double more = equivalent_gain(0, 0, gains, {0.3, 0.4}, 1e-13);
    CHECK(more < base);
}

TEST_CASE("equivalent gain matches the direct formula") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        GainMatrix gains(3, std::vector<double>(3));
        std::vector<double> totals(3);
        for (auto& row : gains)
            for (double& g : row) g = rng.uniform(1e-12, 1e-8);
        for (double& t : totals) t = rng.uniform(0.01, 0.5);
        const double sigma2 = 3.98e-15;
        const double direct =
            gains[1][2] / (gains[0][2] * totals[0] + gains[2][2] * totals[2] + sigma2);
        REQUIRE(equivalent_gain(2, 1, gains, totals, sigma2) ==
                doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("decoding order sorts ascending with id tie-break") {
    std::vector<double> g = {3.0, 1.0, 2.0};
    CHECK(decoding_order({0, 1, 2}, g) == std::vector<int>{1, 2, 0});
    std::vector<double> equal = {5.0, 5.0, 5.0};
    CHECK(decoding_order({2, 0, 1}, equal) == std::vector<int>{0, 1, 2});
    CHECK(decoding_order({1}, g) == std::vector<int>{1});
}

TEST_CASE("two-user cluster SINRs") {
    // Weak user keeps the strong user's signal as interference over its own
    // channel; the strong user is interference-free after cancellation.
    GainMatrix gains = {{1e-10, 4e-10}};
    std::vector<PowerAllocation> powers = {make_power({0.3, 0.1}, 0.5)};
    const double sigma2 = 1e-13;
    const RateReport report = cluster_rates_noma({0, 1}, 0, gains, powers, sigma2, 1e6);

    REQUIRE(report.decoding_order == std::vector<int>{0, 1});
    CHECK(report.users[0].sinr == doctest::Approx(2.9703).epsilon(1e-3));
    CHECK(report.users[0].sinr ==
          doctest::Approx((1e-10 * 0.3) / (1e-10 * 0.1 + 1e-13)).epsilon(1e-12));
    CHECK(report.users[1].intra_w == 0.0);
    CHECK(report.users[1].sinr == doctest::Approx(4e-11 / 1e-13).epsilon(1e-12));
}

TEST_CASE("noise strictly lowers every SINR") {
    GainMatrix gains = {{1e-10, 4e-10, 2e-10}};
    std::vector<PowerAllocation> powers = {make_power({0.2, 0.1, 0.15}, 0.5)};
    const RateReport low = cluster_rates_noma({0, 1, 2}, 0, gains, powers, 1e-14, 1e6);
    const RateReport high = cluster_rates_noma({0, 1, 2}, 0, gains, powers, 1e-12, 1e6);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(high.users[i].sinr < low.users[i].sinr);
    }
}

TEST_CASE("rate arithmetic") {
    CHECK(shannon_rate(3.0, 1e6) == doctest::Approx(2e6).epsilon(1e-12));
    CHECK(shannon_rate(0.0, 1e6) == 0.0);
}

TEST_CASE("throughput accumulates one term per slot") {
    std::vector<double> rates(11, 5e6);  // slots 0..10
    CHECK(throughput(rates) == doctest::Approx(11 * 5e6));
}

TEST_CASE("cancellation order always ascends in equivalent gain") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const int users = 1 + rng.uniform_int(4);
        GainMatrix gains(2, std::vector<double>(users));
        for (auto& row : gains)
            for (double& g : row) g = rng.uniform(1e-12, 1e-8);
        std::vector<PowerAllocation> powers(2);
        powers[0].budget = powers[1].budget = 0.5;
        powers[0].watts.assign(users, 0.0);
        powers[1].watts.assign(users, 0.0);
        std::vector<int> cluster;
        for (int k = 0; k < users; ++k) {
            cluster.push_back(k);
            powers[0].watts[k] = rng.uniform(0.01, 0.12);
        }
        const double sigma2 = 3.98e-15;
        const RateReport report = cluster_rates_noma(cluster, 0, gains, powers, sigma2, 1e6);

        std::vector<double> totals = {powers[0].total(), powers[1].total()};
        double prev = -1.0;
        for (int k : report.decoding_order) {
            const double g = equivalent_gain(k, 0, gains, totals, sigma2);
            REQUIRE(g >= prev);
            prev = g;
        }
        REQUIRE(report.users.back().intra_w == 0.0);
    }
}

TEST_CASE("every gain*power product is heard exactly once per ordered pair") {
    Rng rng(123);
    for (int users = 1; users <= 4; ++users) {
        for (int trial = 0; trial < 25; ++trial) {
            GainMatrix gains(1, std::vector<double>(users));
            std::vector<PowerAllocation> powers(1);
            powers[0].budget = 0.5;
            powers[0].watts.assign(users, 0.0);
            std::vector<int> cluster;
            for (int k = 0; k < users; ++k) {
                gains[0][k] = rng.uniform(1e-12, 1e-8);
                powers[0].watts[k] = rng.uniform(0.01, 0.12);
                cluster.push_back(k);
            }
            const RateReport report =
                cluster_rates_noma(cluster, 0, gains, powers, 1e-14, 1e6);

            // Brute-force enumeration: receiver at position i hears the
            // signals at positions j >= i through its own channel.
            const std::vector<int>& order = report.decoding_order;
            double expected = 0.0;
            for (std::size_t i = 0; i < order.size(); ++i) {
                for (std::size_t j = i; j < order.size(); ++j) {
                    expected += gains[0][order[i]] * powers[0].watts[order[j]];
                }
            }
            double heard = 0.0;
            for (const UserRate& ur : report.users) heard += ur.desired_w + ur.intra_w;
            REQUIRE(heard == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("single-user NOMA, OMA and Shannon coincide") {
    GainMatrix gains = {{3.7e-10}};
    std::vector<PowerAllocation> powers = {make_power({0.5}, 0.5)};
    const double sigma2 = 3.98e-15;
    const RateReport noma = cluster_rates_noma({0}, 0, gains, powers, sigma2, 1e6);
    const RateReport oma = cluster_rates_oma({0}, 0, gains, powers, sigma2, 1e6);
    const double shannon = shannon_rate(3.7e-10 * 0.5 / sigma2, 1e6);
    CHECK(noma.sum_rate == doctest::Approx(shannon).epsilon(1e-12));
    CHECK(oma.sum_rate == doctest::Approx(shannon).epsilon(1e-12));
}

TEST_CASE("equal-gain pair splits the single-user OMA rate") {
    GainMatrix gains = {{2e-10, 2e-10}};
    std::vector<PowerAllocation> powers = {make_power({0.25, 0.25}, 0.5)};
    const double sigma2 = 1e-14;
    const RateReport pair = cluster_rates_oma({0, 1}, 0, gains, powers, sigma2, 1e6);
    const double single = shannon_rate(2e-10 * 0.5 / sigma2, 1e6);
    CHECK(pair.users[0].rate == doctest::Approx(single / 2.0).epsilon(1e-12));
    CHECK(pair.users[1].rate == doctest::Approx(single / 2.0).epsilon(1e-12));
}

TEST_CASE("asymmetric OMA pair matches the scalar formula") {
    GainMatrix gains = {{1e-10, 6e-10}, {2e-11, 3e-11}};
    std::vector<PowerAllocation> powers = {make_power({0.25, 0.25}, 0.5),
                                           make_power({0.1, 0.2}, 0.5)};
    const double sigma2 = 3.98e-15;
    const RateReport report = cluster_rates_oma({0, 1}, 0, gains, powers, sigma2, 1e6);
    for (const UserRate& ur : report.users) {
        const double inter = gains[1][ur.user] * 0.3;
        const double expected =
            0.5 * 1e6 * std::log2(1.0 + gains[0][ur.user] * 0.5 / (inter + sigma2));
        REQUIRE(ur.rate == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("empty cluster reports nothing") {
    GainMatrix gains = {{1e-10}};
    std::vector<PowerAllocation> powers = {make_power({0.0}, 0.5)};
    const RateReport report = cluster_rates_noma({}, 0, gains, powers, 1e-14, 1e6);
    CHECK(report.sum_rate == 0.0);
    CHECK(report.users.empty());
}
