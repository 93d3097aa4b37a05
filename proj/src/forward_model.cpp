#include "mechgen/forward_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mechgen {

namespace {

MechanicKind event_of(PunishedMechanic m)
{
    switch (m) {
    case PunishedMechanic::high_jump: return MechanicKind::high_jump;
    case PunishedMechanic::speed: return MechanicKind::speed;
    case PunishedMechanic::stomp: return MechanicKind::stomp;
    case PunishedMechanic::shell_kill: return MechanicKind::shell_kill;
    case PunishedMechanic::mushroom: return MechanicKind::mushroom;
    case PunishedMechanic::coin: return MechanicKind::coin;
    }
    return MechanicKind::jump;
}

} // namespace

std::string_view punished_name(PunishedMechanic m)
{
    switch (m) {
    case PunishedMechanic::high_jump: return "high-jump";
    case PunishedMechanic::speed: return "speed";
    case PunishedMechanic::stomp: return "stomp";
    case PunishedMechanic::shell_kill: return "shell-kill";
    case PunishedMechanic::mushroom: return "mushroom";
    case PunishedMechanic::coin: return "coin";
    }
    return "?";
}

std::optional<PunishedMechanic> parse_punished(std::string_view name)
{
    for (auto m : {PunishedMechanic::high_jump, PunishedMechanic::speed, PunishedMechanic::stomp,
                   PunishedMechanic::shell_kill, PunishedMechanic::mushroom, PunishedMechanic::coin}) {
        if (punished_name(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

PunishingModel::PunishingModel(ModelPtr inner, PunishedMechanic mechanic)
    : inner_(std::move(inner)), mechanic_(mechanic)
{
    if (!inner_) {
        throw std::invalid_argument("punishing model needs an inner model");
    }
}

StepResult PunishingModel::step(const GameState& state, const Action& action) const
{
    StepResult r = inner_->step(state, action);
    if (mechanic_ == PunishedMechanic::high_jump) {
        const Player& p = r.state.player;
        if (p.jumping && p.jump_ticks_held > params().punish_hold_ticks) {
            r.dead = true;
        }
        return r;
    }
    const MechanicKind punished = event_of(mechanic_);
    if (std::any_of(r.events.begin(), r.events.end(), [&](const MechanicEvent& e) { return e.kind == punished; })) {
        r.dead = true;
    }
    return r;
}

GameState without_enemies(const GameState& state)
{
    GameState view = state;
    std::erase_if(view.entities, [](const Entity& e) { return is_enemy(e.kind); });
    return view;
}

StepResult EnemyBlindModel::step(const GameState& state, const Action& action) const
{
    return inner_->step(without_enemies(state), action);
}

ModelPtr make_base_model(const PhysicsParams& params) { return std::make_shared<BaseModel>(params); }

ModelPtr wrap_punishing(ModelPtr model, PunishedMechanic mechanic)
{
    return std::make_shared<PunishingModel>(std::move(model), mechanic);
}

ModelPtr wrap_punishing(ModelPtr model, std::string_view mechanic)
{
    auto m = parse_punished(mechanic);
    if (!m) {
        throw std::invalid_argument("unknown punishing mechanic '" + std::string(mechanic)
                                    + "' (expected high-jump, speed, stomp, shell-kill, mushroom or coin)");
    }
    return wrap_punishing(std::move(model), *m);
}

ModelPtr wrap_enemy_blind(ModelPtr model) { return std::make_shared<EnemyBlindModel>(std::move(model)); }

} // namespace mechgen
