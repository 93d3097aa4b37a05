#pragma once

#include "mechgen/engine.hpp"

#include <functional>
#include <memory>

namespace mechgen {

/// A step contract over GameState. Decorators wrap another model; they never change the
/// state transition, only add death verdicts or hide entities from a planner.
class ForwardModel {
public:
    virtual ~ForwardModel() = default;

    virtual StepResult step(const GameState& state, const Action& action) const = 0;

    virtual const PhysicsParams& params() const = 0;
};

using ModelPtr = std::shared_ptr<const ForwardModel>;

/// The game as it is.
class BaseModel final : public ForwardModel {
public:
    explicit BaseModel(PhysicsParams params = {}) : params_(params) {}

    StepResult step(const GameState& state, const Action& action) const override
    {
        return mechgen::step(state, action, params_);
    }

    const PhysicsParams& params() const override { return params_; }

private:
    PhysicsParams params_;
};

/// The six punishable mechanics.
enum class PunishedMechanic { high_jump, speed, stomp, shell_kill, mushroom, coin };

std::string_view punished_name(PunishedMechanic m);
std::optional<PunishedMechanic> parse_punished(std::string_view name);

/// Reports death whenever the punished mechanic fires. High jump is judged by how long the
/// jump button was held (longer than `punish_hold_ticks`), not by the apex-based event.
class PunishingModel final : public ForwardModel {
public:
    PunishingModel(ModelPtr inner, PunishedMechanic mechanic);

    StepResult step(const GameState& state, const Action& action) const override;
    const PhysicsParams& params() const override { return inner_->params(); }
    PunishedMechanic mechanic() const { return mechanic_; }

private:
    ModelPtr inner_;
    PunishedMechanic mechanic_;
};

/// Planner's view without goombas, koopas or shells.
class EnemyBlindModel final : public ForwardModel {
public:
    explicit EnemyBlindModel(ModelPtr inner) : inner_(std::move(inner)) {}

    StepResult step(const GameState& state, const Action& action) const override;
    const PhysicsParams& params() const override { return inner_->params(); }

private:
    ModelPtr inner_;
};

ModelPtr make_base_model(const PhysicsParams& params = {});
ModelPtr wrap_punishing(ModelPtr model, PunishedMechanic mechanic);
/// Throws std::invalid_argument for anything outside the six punishable mechanics.
ModelPtr wrap_punishing(ModelPtr model, std::string_view mechanic);
ModelPtr wrap_enemy_blind(ModelPtr model);

GameState without_enemies(const GameState& state);

} // namespace mechgen
