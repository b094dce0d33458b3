#include "uavsim/baselines.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace uavsim {

std::optional<BaselineKind> baseline_from_name(const std::string& name) {
    if (name == "circular") return BaselineKind::Circular;
    if (name == "2d") return BaselineKind::Mdqn2d;
    if (name == "oma") return BaselineKind::Oma;
    if (name == "equal-power") return BaselineKind::EqualPower;
    if (name == "static-decoding") return BaselineKind::StaticDecoding;
    if (name == "no-recluster") return BaselineKind::NoRecluster;
    if (name == "random") return BaselineKind::Random;
    return std::nullopt;
}

std::string baseline_name(BaselineKind kind) {
    switch (kind) {
        case BaselineKind::None: return "none";
        case BaselineKind::Circular: return "circular";
        case BaselineKind::Mdqn2d: return "2d";
        case BaselineKind::Oma: return "oma";
        case BaselineKind::EqualPower: return "equal-power";
        case BaselineKind::StaticDecoding: return "static-decoding";
        case BaselineKind::NoRecluster: return "no-recluster";
        case BaselineKind::Random: return "random";
    }
    return "none";
}

ModeBundle resolve_mode(BaselineKind kind) {
    ModeBundle mode;
    switch (kind) {
        case BaselineKind::None:
            break;
        case BaselineKind::Circular:
            mode.flags.equal_power = true;
            mode.allow_vertical = false;
            mode.trainable = false;
            break;
        case BaselineKind::Mdqn2d:
            mode.allow_vertical = false;
            break;
        case BaselineKind::Oma:
            mode.flags.oma = true;
            break;
        case BaselineKind::EqualPower:
            mode.flags.equal_power = true;
            break;
        case BaselineKind::StaticDecoding:
            mode.flags.static_decoding = true;
            break;
        case BaselineKind::NoRecluster:
            mode.flags.recluster = false;
            break;
        case BaselineKind::Random:
            mode.trainable = false;
            break;
    }
    return mode;
}

CircularPolicy::CircularPolicy(const ActionCatalog& catalog, double radius, double angular_step)
    : catalog_(catalog), radius_(radius), angular_step_(angular_step) {}

int CircularPolicy::period_slots() const {
    return static_cast<int>(std::lround(2.0 * std::numbers::pi / angular_step_));
}

void CircularPolicy::begin_episode(const Environment& env, int episode) {
    (void)episode;
    if (angular_step_ == 0.0) {
        // Default: a 90-step circle; the waypoint then moves slower than the
        // agent so axis-aligned tracking keeps up.
        angular_step_ = 2.0 * std::numbers::pi / 90.0;
    }
    const WorldState& w = env.world();
    phase_.assign(w.uavs.size(), 0.0);
    for (std::size_t u = 0; u < w.uavs.size(); ++u) {
        const Point2 c = w.assignment.centroids[u];
        phase_[u] = std::atan2(w.uavs[u].y - c.y, w.uavs[u].x - c.x);
    }
}

MoveAction best_horizontal_move(const UavState& uav, double wx, double wy, double dt,
                                const AreaBounds& area) {
    constexpr MoveAction kHorizontal[] = {MoveAction::Hover, MoveAction::Left, MoveAction::Right,
                                          MoveAction::Forward, MoveAction::Backward};
    MoveAction best = MoveAction::Hover;
    double best_d = std::numeric_limits<double>::infinity();
    for (MoveAction m : kHorizontal) {
        const UavState moved = move_uav(uav, m, dt, area);
        const double dx = moved.x - wx;
        const double dy = moved.y - wy;
        const double d = dx * dx + dy * dy;
        if (d < best_d) {
            best_d = d;
            best = m;
        }
    }
    return best;
}

std::vector<AgentCommand> CircularPolicy::act(const Environment& env) {
    const WorldState& w = env.world();
    const double dt = env.config().dt;
    const int uav_count = env.config().uav_count;
    std::vector<AgentCommand> commands(uav_count);

    for (int u = 0; u < uav_count; ++u) {
        const Point2 c = w.assignment.centroids[u];
        const double wx = c.x + radius_ * std::cos(phase_[u]);
        const double wy = c.y + radius_ * std::sin(phase_[u]);

        const MoveAction best = best_horizontal_move(w.uavs[u], wx, wy, dt, env.config().area);
        const UavState moved = move_uav(w.uavs[u], best, dt, env.config().area);
        const double dx = moved.x - wx;
        const double dy = moved.y - wy;
        const double step = w.uavs[u].speed * dt;
        if (dx * dx + dy * dy <= step * step) phase_[u] += angular_step_;

        const int served = w.served_count(u);
        const int action = static_cast<int>(best) * catalog_.combo_count();
        commands[u] = catalog_.command(action, served);
    }
    return commands;
}

}  // namespace uavsim
