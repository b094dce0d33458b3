#include "uavsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uavsim {

double ChannelParams::noise_watts() const { return std::pow(10.0, (noise_dbm - 30.0) / 10.0); }

double distance3d(const UavState& uav, const UserState& user) {
    const double dx = uav.x - user.x;
    const double dy = uav.y - user.y;
    return std::sqrt(uav.h * uav.h + dx * dx + dy * dy);
}

PathLossDb path_loss_db(double h, double d3, double fc_ghz) {
    if (h <= 1.0) {
        throw std::invalid_argument("path_loss_db: altitude must exceed 1 m");
    }
    if (d3 < h) {
        throw std::invalid_argument("path_loss_db: slant distance shorter than altitude");
    }
    const double log_h = std::log10(h);
    const double log_d = std::log10(d3);
    const double fc_term = 20.0 * std::log10(fc_ghz);
    const double los = 30.9 + (22.25 - 0.5 * log_h) * log_d + fc_term;
    const double nlos = 32.4 + (43.2 - 7.6 * log_h) * log_d + fc_term;
    return {los, std::max(los, nlos)};
}

double p_los_d0(double h) { return std::max(294.05 * std::log10(h) - 432.94, 18.0); }

double p_los_p1(double h) { return 233.98 * std::log10(h) - 0.95; }

double p_los(double h, double d3) {
    if (d3 < h) {
        throw std::invalid_argument("p_los: slant distance shorter than altitude");
    }
    const double p1 = p_los_p1(h);
    if (p1 <= 0.0) {
        throw std::invalid_argument("p_los: altitude below the model's validity range");
    }
    const double r = std::sqrt(std::max(d3 * d3 - h * h, 0.0));
    const double d0 = p_los_d0(h);
    if (r <= d0) {
        return 1.0;
    }
    return std::clamp(d0 / r + std::exp((d0 - r) / p1), 0.0, 1.0);
}

double mean_path_loss_db(double p_los_value, double loss_los_db, double loss_nlos_db) {
    return p_los_value * loss_los_db + (1.0 - p_los_value) * loss_nlos_db;
}

double channel_gain(double loss_mean_db, double fading_draw) {
    return fading_draw * std::pow(10.0, -loss_mean_db / 10.0);
}

double draw_fading(FadingKind kind, Rng& rng) {
    return kind == FadingKind::Rayleigh ? rng.exponential() : 1.0;
}

ChannelSample sample_channel(const UavState& uav, const UserState& user,
                             const ChannelParams& params, double fading_draw) {
    ChannelSample s;
    s.d3 = std::max(distance3d(uav, user), uav.h);  // guard slant < h from rounding
    const PathLossDb loss = path_loss_db(uav.h, s.d3, params.fc_ghz);
    s.loss_los_db = loss.los_db;
    s.loss_nlos_db = loss.nlos_db;
    s.p_los = p_los(uav.h, s.d3);
    s.loss_mean_db = mean_path_loss_db(s.p_los, s.loss_los_db, s.loss_nlos_db);
    s.gain_linear = channel_gain(s.loss_mean_db, fading_draw);
    return s;
}

}  // namespace uavsim
