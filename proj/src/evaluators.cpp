#include "mechgen/evaluators.hpp"

#include <optional>

namespace mechgen {

double two_run_constraint(bool perfect_won, bool limited_won, double d_perfect, double d_limited, double d_scene)
{
    if (perfect_won && !limited_won) {
        return 1.0;
    }
    return (d_perfect - d_limited) / d_scene;
}

double completion_constraint(bool won, double d, double d_scene) { return won ? 1.0 : d / d_scene; }

namespace {

ConstraintReport compare(const Scene& scene, Playthrough perfect, Playthrough limited)
{
    ConstraintReport r;
    r.value = two_run_constraint(perfect.won, limited.won, perfect.max_distance, limited.max_distance, scene.width());
    r.satisfied = r.value == 1.0;
    r.perfect_trace = std::move(perfect);
    r.limited_trace = std::move(limited);
    return r;
}

} // namespace

ConstraintReport limited_agents_constraint(const Scene& scene, const AgentConfig& limited, const AgentConfig& perfect,
                                           int tick_budget)
{
    const BaseModel world(perfect.planning_model->params());
    return compare(scene, play(scene, perfect, tick_budget, world), play(scene, limited, tick_budget, world));
}

ConstraintReport punishing_constraint(const Scene& scene, PunishedMechanic mechanic, const AgentConfig& perfect,
                                      int tick_budget)
{
    const BaseModel world(perfect.planning_model->params());
    AgentConfig punished = perfect;
    punished.planning_model = wrap_punishing(perfect.planning_model, mechanic);
    const PunishingModel punishing_world(std::make_shared<BaseModel>(world), mechanic);
    return compare(scene, play(scene, perfect, tick_budget, world), play(scene, punished, tick_budget, punishing_world));
}

ConstraintReport mechanics_constraint(const Scene& scene, const AgentConfig& perfect, int tick_budget)
{
    const BaseModel world(perfect.planning_model->params());
    ConstraintReport r;
    r.perfect_trace = play(scene, perfect, tick_budget, world);
    r.value = completion_constraint(r.perfect_trace.won, r.perfect_trace.max_distance, scene.width());
    r.satisfied = r.value == 1.0;
    return r;
}

std::string_view dimension_name(Dimension d)
{
    switch (d) {
    case Dimension::jump: return "jump";
    case Dimension::high_jump: return "high-jump";
    case Dimension::long_jump: return "long-jump";
    case Dimension::stomp: return "stomp";
    case Dimension::shell_kill: return "shell-kill";
    case Dimension::fall_kill: return "fall-kill";
    case Dimension::mushroom: return "mushroom";
    case Dimension::coin: return "coin";
    }
    return "?";
}

int DimensionVector::cell_index() const
{
    int index = 0;
    for (int i = 0; i < kDimensionCount; ++i) {
        index |= (bits[static_cast<std::size_t>(i)] ? 1 : 0) << i;
    }
    return index;
}

DimensionVector DimensionVector::from_cell(int index)
{
    DimensionVector v;
    for (int i = 0; i < kDimensionCount; ++i) {
        v.bits[static_cast<std::size_t>(i)] = ((index >> i) & 1) != 0;
    }
    return v;
}

DimensionVector extract_dimensions(const Playthrough& trace)
{
    DimensionVector v;
    for (const auto& e : trace.events) {
        std::optional<Dimension> d;
        switch (e.kind) {
        case MechanicKind::jump: d = Dimension::jump; break;
        case MechanicKind::high_jump: d = Dimension::high_jump; break;
        case MechanicKind::long_jump: d = Dimension::long_jump; break;
        case MechanicKind::stomp: d = Dimension::stomp; break;
        case MechanicKind::shell_kill: d = Dimension::shell_kill; break;
        case MechanicKind::fall_kill: d = Dimension::fall_kill; break;
        case MechanicKind::mushroom: d = Dimension::mushroom; break;
        case MechanicKind::coin: d = Dimension::coin; break;
        case MechanicKind::speed: break;
        }
        if (d) {
            v.bits[static_cast<std::size_t>(*d)] = true;
        }
    }
    return v;
}

} // namespace mechgen
