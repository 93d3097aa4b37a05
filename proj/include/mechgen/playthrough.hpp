#pragma once

#include "mechgen/forward_model.hpp"
#include "mechgen/scene.hpp"

#include <functional>
#include <string>
#include <vector>

namespace mechgen {

struct Playthrough {
    bool won = false;
    double max_distance = 0.0; ///< furthest x reached, tiles; equals the scene width on a win
    int ticks_used = 0;
    bool died = false;
    std::vector<MechanicEvent> events;

    bool operator==(const Playthrough&) const = default;
};

/// Chooses an action for the current state.
using Policy = std::function<Action(const GameState&)>;

/// Plays `scene` from its initial state until the player reaches the right edge, dies, or
/// `tick_budget` ticks pass. State transitions come from `model`; decorated models only add
/// death verdicts on top of the base transition.
Playthrough simulate(const Scene& scene, const Policy& policy, int tick_budget, const ForwardModel& model);

/// Default budget: 10 ticks per column (a clean run needs a little over 3).
inline int default_tick_budget(const Scene& scene) { return 10 * scene.width(); }

/// Line-oriented trace:
///
///     won 1
///     distance 20.0000
///     ticks 74
///     events 2
///     12 JUMP 5.4000
///     ...
std::string serialize_trace(const Playthrough& trace);

} // namespace mechgen
