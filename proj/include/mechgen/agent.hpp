#pragma once

#include "mechgen/forward_model.hpp"
#include "mechgen/playthrough.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace mechgen {

enum class AgentKind { perfect, no_run, limited_jump, enemy_blind };

std::string_view agent_name(AgentKind kind);
std::optional<AgentKind> parse_agent(std::string_view name);

inline constexpr int kUncappedHold = 1 << 20;

struct AgentConfig {
    AgentKind kind = AgentKind::perfect;
    std::vector<Action> action_set;   ///< non-empty subset of all_actions()
    int node_budget = 800;            ///< expansions per planning call
    int max_jump_hold = kUncappedHold; ///< ticks the jump button may stay held, takeoff included
    ModelPtr planning_model;          ///< what the planner believes the game to be
    int replan_interval = 1;          ///< ticks between planning calls

    /// Throws ConfigError on an empty action set, non-positive budget, or missing model.
    void validate() const;
};

AgentConfig make_perfect(const PhysicsParams& params = {}, int node_budget = 800);

/// no-run drops every run action; limited-jump caps the hold at 2 ticks;
/// enemy-blind plans with a model that cannot see enemies.
AgentConfig make_limited(AgentKind kind, const AgentConfig& perfect = make_perfect());

/// Throws std::invalid_argument for names other than no-run, limited-jump, enemy-blind.
AgentConfig make_limited(std::string_view kind, const AgentConfig& perfect = make_perfect());

struct PlanResult {
    Action action;
    std::vector<Action> path; ///< actions from the root to the chosen node
    double f = 0.0;           ///< f-value of the chosen node
    int expansions = 0;
    bool reached_goal = false;
    bool fallback = false;              ///< every node died; picked the longest-surviving first action
    std::vector<std::uint64_t> expanded; ///< state keys in expansion order
};

/// Best-first search from `state`: g = ticks, h = (width - x) / run speed. Returns the first
/// action of the best frontier node (lowest f, then greatest x, then earliest insertion).
PlanResult plan_search(const GameState& state, const AgentConfig& config);

inline Action plan(const GameState& state, const AgentConfig& config) { return plan_search(state, config).action; }

/// Quantized state key used for duplicate detection (1/16 tile, 1/32 tile per tick).
std::uint64_t state_key(const GameState& state);

/// Policy that replans every `replan_interval` ticks.
Policy make_policy(const AgentConfig& config);

/// Plays `scene` with `config`, executing in `execution_model` (the base model unless the
/// agent is being judged under a punishing model).
Playthrough play(const Scene& scene, const AgentConfig& config, int tick_budget, const ForwardModel& execution_model);

} // namespace mechgen
