#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace uavsim {

// Derives an independent child seed from a master seed, a stream name and an
// index. Every source of randomness in the simulator pulls from its own named
// stream so that toggling one feature never shifts the draws of another.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream, std::uint64_t index = 0);

// mt19937_64 with explicit, platform-independent value mappings. The standard
// distributions are implementation-defined, so all conversions are done here.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // [0, 1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // [0, n)
    int uniform_int(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }

    // unit-mean exponential
    double exponential() { return -std::log(1.0 - uniform()); }

  private:
    std::mt19937_64 gen_;
};

// Canonical stream names used across the simulator.
namespace streams {
inline constexpr std::string_view kPlacement = "placement";
inline constexpr std::string_view kMobility = "mobility";
inline constexpr std::string_view kFading = "fading";
inline constexpr std::string_view kCluster = "cluster";
inline constexpr std::string_view kWeights = "weights";
inline constexpr std::string_view kPolicy = "policy";
inline constexpr std::string_view kSampling = "sampling";
}  // namespace streams

}  // namespace uavsim
