#pragma once

#include "uavsim/mobility.hpp"
#include "uavsim/rng.hpp"

namespace uavsim {

enum class FadingKind { Rayleigh, None };

struct ChannelParams {
    double fc_ghz = 2.0;        // carrier frequency
    double noise_dbm = -114.0;  // AWGN power over the service bandwidth
    FadingKind fading = FadingKind::Rayleigh;

    double noise_watts() const;
};

// One evaluated link between a UAV and a ground user.
struct ChannelSample {
    double d3 = 0.0;            // 3-D distance, m
    double p_los = 0.0;         // line-of-sight probability
    double loss_los_db = 0.0;   // LoS path loss
    double loss_nlos_db = 0.0;  // NLoS path loss (never below LoS)
    double loss_mean_db = 0.0;  // LoS/NLoS mixture, mixed in dB
    double gain_linear = 0.0;   // small-scale-faded power gain
};

struct PathLossDb {
    double los_db = 0.0;
    double nlos_db = 0.0;
};

double distance3d(const UavState& uav, const UserState& user);

// Urban-macro aerial path loss. Valid for altitudes above 1 m and slant
// distances no shorter than the altitude; both are rejected otherwise.
//   L_LoS  = 30.9 + (22.25 - 0.5 log10 h) log10 d + 20 log10 fc
//   L_NLoS = max(L_LoS, 32.4 + (43.2 - 7.6 log10 h) log10 d + 20 log10 fc)
PathLossDb path_loss_db(double h, double d3, double fc_ghz);

// LoS probability as a function of altitude and horizontal range:
// certain LoS inside d0(h), then a decaying tail with scale p1(h). The tail
// expression can creep above 1 just outside d0 and is clamped.
double p_los(double h, double d3);

// d0/p1 model coefficients, exposed for direct checks.
double p_los_d0(double h);
double p_los_p1(double h);

double mean_path_loss_db(double p_los_value, double loss_los_db, double loss_nlos_db);

// g = H * 10^(-L/10) with H the small-scale power fade for this slot.
double channel_gain(double loss_mean_db, double fading_draw);

// Unit-mean power fade (exponential, i.e. Rayleigh envelope), or exactly 1
// with fading disabled.
double draw_fading(FadingKind kind, Rng& rng);

// Full link evaluation for one (UAV, user) pair at one slot.
ChannelSample sample_channel(const UavState& uav, const UserState& user,
                             const ChannelParams& params, double fading_draw);

}  // namespace uavsim
