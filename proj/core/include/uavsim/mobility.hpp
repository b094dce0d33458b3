#pragma once

#include "uavsim/rng.hpp"

namespace uavsim {

// Axis-aligned service volume. Users live on the ground plane, UAVs inside
// the full box.
struct AreaBounds {
    double x_min = -200.0;
    double x_max = 200.0;
    double y_min = -200.0;
    double y_max = 200.0;
    double h_min = 50.0;
    double h_max = 150.0;

    double clip_x(double x) const;
    double clip_y(double y) const;
    double clip_h(double h) const;
    bool contains_ground(double x, double y) const;
    bool contains_volume(double x, double y, double h) const;
};

enum class MobilityModel { RandomRoam, DirectionalWalk };

struct UserState {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    MobilityModel model = MobilityModel::RandomRoam;
    double theta_fixed = 0.0;  // drift direction, DirectionalWalk only
};

struct UavState {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    double h = 100.0;
    double speed = 10.0;  // m/s, fixed over the flight
};

enum class MoveAction { Left, Right, Forward, Backward, Up, Down, Hover };
inline constexpr int kMoveActionCount = 7;

// Ground displacement for one slot, before boundary clipping.
struct Displacement {
    double dx = 0.0;
    double dy = 0.0;
};

// Random roaming: direction U(0,2pi), speed U(0,v_max).
Displacement roam_displacement(double v_max, double dt, Rng& rng);

// Directional walking: fixed drift of 4/5*v_max along theta_fixed plus a
// random component with direction U(0,2pi) and speed U(0, v_max/5). The
// deterministic core is exposed so tests can pin the random draws.
Displacement directional_displacement(double theta_fixed, double v_max, double random_angle,
                                      double random_speed, double dt);
Displacement directional_displacement(double theta_fixed, double v_max, double dt, Rng& rng);

UserState apply_displacement(const UserState& user, const Displacement& d, const AreaBounds& area);

// Advances one user by one slot under its mobility model.
UserState step_user(const UserState& user, double v_max, double dt, const AreaBounds& area,
                    Rng& rng);

// Applies one of the seven flight actions. Exactly one coordinate changes by
// speed*dt (hover changes none); the result is clipped into the service box.
UavState move_uav(const UavState& uav, MoveAction action, double dt, const AreaBounds& area);

}  // namespace uavsim
