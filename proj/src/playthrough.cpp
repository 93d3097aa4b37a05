#include "mechgen/playthrough.hpp"

#include <cstdio>
#include <stdexcept>

namespace mechgen {

Playthrough simulate(const Scene& scene, const Policy& policy, int tick_budget, const ForwardModel& model)
{
    if (tick_budget < 1) {
        throw std::invalid_argument("tick budget must be at least 1");
    }
    GameState state = initial_state(scene, model.params());
    Playthrough out;
    while (out.ticks_used < tick_budget) {
        const Action action = policy(state);
        StepResult r = model.step(state, action);
        ++out.ticks_used;
        out.events.insert(out.events.end(), r.events.begin(), r.events.end());
        state = std::move(r.state);
        if (state.won) {
            out.won = true;
            break;
        }
        if (r.dead) {
            out.died = true;
            break;
        }
    }
    out.max_distance = state.won ? state.width : state.max_x;
    return out;
}

std::string serialize_trace(const Playthrough& trace)
{
    char buf[96];
    std::string out;
    std::snprintf(buf, sizeof buf, "won %d\ndistance %.4f\nticks %d\nevents %zu\n", trace.won ? 1 : 0,
                  trace.max_distance, trace.ticks_used, trace.events.size());
    out += buf;
    for (const auto& e : trace.events) {
        std::snprintf(buf, sizeof buf, "%d %s %.4f\n", e.tick, std::string(mechanic_name(e.kind)).c_str(), e.x);
        out += buf;
    }
    return out;
}

} // namespace mechgen
