#pragma once

#include <optional>
#include <string>

#include "uavsim/trainer.hpp"

namespace uavsim {

// Reference policies and ablations; each changes exactly one axis of the full
// method. Random stands in for an unstructured "chaotic" deployment.
enum class BaselineKind {
    None,
    Circular,
    Mdqn2d,
    Oma,
    EqualPower,
    StaticDecoding,
    NoRecluster,
    Random,
};

std::optional<BaselineKind> baseline_from_name(const std::string& name);
std::string baseline_name(BaselineKind kind);

struct ModeBundle {
    ModeFlags flags;
    bool allow_vertical = true;
    bool trainable = true;  // circular and random need no training phase
};

ModeBundle resolve_mode(BaselineKind kind);

// The horizontal move (or hover) whose clipped endpoint lands closest to the
// waypoint; hover wins exact ties, so a reached waypoint parks the agent.
MoveAction best_horizontal_move(const UavState& uav, double wx, double wy, double dt,
                                const AreaBounds& area);

// Orbits each agent around its own cluster centroid at the initial altitude:
// every slot the policy picks the horizontal move that best tracks a waypoint
// on the circle, and advances the waypoint once the agent has caught up.
class CircularPolicy : public JointPolicy {
  public:
    CircularPolicy(const ActionCatalog& catalog, double radius = 50.0, double angular_step = 0.0);

    void begin_episode(const Environment& env, int episode) override;
    std::vector<AgentCommand> act(const Environment& env) override;

    double angular_step() const { return angular_step_; }
    int period_slots() const;

  private:
    const ActionCatalog& catalog_;
    double radius_;
    double angular_step_;
    std::vector<double> phase_;
};

}  // namespace uavsim
