#include "uavsim/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace uavsim {

double AreaBounds::clip_x(double x) const { return std::clamp(x, x_min, x_max); }
double AreaBounds::clip_y(double y) const { return std::clamp(y, y_min, y_max); }
double AreaBounds::clip_h(double h) const { return std::clamp(h, h_min, h_max); }

bool AreaBounds::contains_ground(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
}

bool AreaBounds::contains_volume(double x, double y, double h) const {
    return contains_ground(x, y) && h >= h_min && h <= h_max;
}

Displacement roam_displacement(double v_max, double dt, Rng& rng) {
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double speed = rng.uniform(0.0, v_max);
    return {speed * std::cos(theta) * dt, speed * std::sin(theta) * dt};
}

Displacement directional_displacement(double theta_fixed, double v_max, double random_angle,
                                      double random_speed, double dt) {
    const double drift = 0.8 * v_max;
    return {(drift * std::cos(theta_fixed) + random_speed * std::cos(random_angle)) * dt,
            (drift * std::sin(theta_fixed) + random_speed * std::sin(random_angle)) * dt};
}

Displacement directional_displacement(double theta_fixed, double v_max, double dt, Rng& rng) {
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double speed = rng.uniform(0.0, 0.2 * v_max);
    return directional_displacement(theta_fixed, v_max, angle, speed, dt);
}

UserState apply_displacement(const UserState& user, const Displacement& d,
                             const AreaBounds& area) {
    UserState next = user;
    next.x = area.clip_x(user.x + d.dx);
    next.y = area.clip_y(user.y + d.dy);
    return next;
}

UserState step_user(const UserState& user, double v_max, double dt, const AreaBounds& area,
                    Rng& rng) {
    const Displacement d = user.model == MobilityModel::RandomRoam
                               ? roam_displacement(v_max, dt, rng)
                               : directional_displacement(user.theta_fixed, v_max, dt, rng);
    return apply_displacement(user, d, area);
}

UavState move_uav(const UavState& uav, MoveAction action, double dt, const AreaBounds& area) {
    const double step = uav.speed * dt;
    UavState next = uav;
    switch (action) {
        case MoveAction::Left: next.x -= step; break;
        case MoveAction::Right: next.x += step; break;
        case MoveAction::Forward: next.y += step; break;
        case MoveAction::Backward: next.y -= step; break;
        case MoveAction::Up: next.h += step; break;
        case MoveAction::Down: next.h -= step; break;
        case MoveAction::Hover: break;
    }
    next.x = area.clip_x(next.x);
    next.y = area.clip_y(next.y);
    next.h = area.clip_h(next.h);
    return next;
}

}  // namespace uavsim
