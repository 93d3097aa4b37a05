#include "mechgen/agent.hpp"

#include "mechgen/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <queue>
#include <string>
#include <unordered_set>

namespace mechgen {

namespace {

struct Node {
    GameState state;
    int g = 0;
    int parent = -1;
    Action action;
    int first = -1; ///< index into all_actions() of the root action leading here
    double f = 0.0;
    std::uint64_t key = 0;
};

struct FrontierOrder {
    const std::vector<Node>* nodes;

    // priority_queue keeps the "largest" on top, so this returns true when a ranks below b.
    bool operator()(int a, int b) const
    {
        const Node& na = (*nodes)[static_cast<std::size_t>(a)];
        const Node& nb = (*nodes)[static_cast<std::size_t>(b)];
        if (na.f != nb.f) {
            return na.f > nb.f;
        }
        if (na.state.player.x != nb.state.player.x) {
            return na.state.player.x < nb.state.player.x;
        }
        return a > b;
    }
};

inline void mix(std::uint64_t& h, std::int64_t v)
{
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

inline std::int64_t quant(double v, double steps) { return static_cast<std::int64_t>(std::floor(v * steps + 0.5)); }

bool allowed(const Action& a, const Player& p, const AgentConfig& config)
{
    return !(a.jump && p.jumping && p.jump_ticks_held >= config.max_jump_hold);
}

double heuristic(const GameState& s, const PhysicsParams& params)
{
    return std::max(0.0, s.width - s.player.x) / params.run_max_speed;
}

// Rounded so that paths of equal true cost tie exactly instead of by accumulated roundoff.
double f_value(int g, const GameState& s, const PhysicsParams& params)
{
    return std::round((g + heuristic(s, params)) * 1e6) / 1e6;
}

std::vector<Action> path_to(const std::vector<Node>& nodes, int idx)
{
    std::vector<Action> path;
    while (idx > 0) {
        path.push_back(nodes[static_cast<std::size_t>(idx)].action);
        idx = nodes[static_cast<std::size_t>(idx)].parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace

std::string_view agent_name(AgentKind kind)
{
    switch (kind) {
    case AgentKind::perfect: return "perfect";
    case AgentKind::no_run: return "no-run";
    case AgentKind::limited_jump: return "limited-jump";
    case AgentKind::enemy_blind: return "enemy-blind";
    }
    return "?";
}

std::optional<AgentKind> parse_agent(std::string_view name)
{
    for (auto k : {AgentKind::perfect, AgentKind::no_run, AgentKind::limited_jump, AgentKind::enemy_blind}) {
        if (agent_name(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

void AgentConfig::validate() const
{
    if (action_set.empty()) {
        throw ConfigError("agent action set is empty");
    }
    if (node_budget < 1) {
        throw ConfigError("node budget must be at least 1");
    }
    if (max_jump_hold < 1) {
        throw ConfigError("jump hold cap must be at least 1");
    }
    if (replan_interval < 1) {
        throw ConfigError("replan interval must be at least 1");
    }
    if (!planning_model) {
        throw ConfigError("agent has no planning model");
    }
}

AgentConfig make_perfect(const PhysicsParams& params, int node_budget)
{
    AgentConfig c;
    c.kind = AgentKind::perfect;
    c.action_set.assign(all_actions().begin(), all_actions().end());
    c.node_budget = node_budget;
    c.planning_model = make_base_model(params);
    return c;
}

AgentConfig make_limited(AgentKind kind, const AgentConfig& perfect)
{
    AgentConfig c = perfect;
    c.kind = kind;
    switch (kind) {
    case AgentKind::no_run:
        std::erase_if(c.action_set, [](const Action& a) { return a.run; });
        break;
    case AgentKind::limited_jump: c.max_jump_hold = 2; break;
    case AgentKind::enemy_blind: c.planning_model = wrap_enemy_blind(perfect.planning_model); break;
    case AgentKind::perfect: throw std::invalid_argument("perfect is not a limited agent");
    }
    return c;
}

AgentConfig make_limited(std::string_view kind, const AgentConfig& perfect)
{
    auto k = parse_agent(kind);
    if (!k || *k == AgentKind::perfect) {
        throw std::invalid_argument("unknown limited agent '" + std::string(kind)
                                    + "' (expected no-run, limited-jump or enemy-blind)");
    }
    return make_limited(*k, perfect);
}

std::uint64_t state_key(const GameState& s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const Player& p = s.player;
    mix(h, quant(p.x, 16));
    mix(h, quant(p.y, 16));
    mix(h, quant(p.vx, 32));
    mix(h, quant(p.vy, 32));
    mix(h, (p.grounded ? 1 : 0) | (p.jumping ? 2 : 0) | (p.jump_latched ? 4 : 0) | (p.speeding ? 8 : 0)
               | (p.power == Power::big ? 16 : 0) | (p.invulnerable > 0 ? 32 : 0));
    mix(h, p.jump_hold_remaining);
    mix(h, p.jump_ticks_held);
    for (const auto& e : s.entities) {
        mix(h, static_cast<std::int64_t>(e.kind));
        mix(h, quant(e.x, 16));
        mix(h, quant(e.y, 16));
        mix(h, e.vx > 0 ? 1 : e.vx < 0 ? -1 : 0);
    }
    mix(h, static_cast<std::int64_t>(s.grid_hash));
    return h;
}

PlanResult plan_search(const GameState& state, const AgentConfig& config)
{
    config.validate();
    const ForwardModel& model = *config.planning_model;
    const PhysicsParams& params = model.params();

    std::vector<Node> nodes;
    // Each expansion adds at most kActionCount children; parents are referenced across push_back.
    nodes.reserve(static_cast<std::size_t>(config.node_budget) * kActionCount + 2);
    nodes.push_back({state, 0, -1, Action{}, -1, f_value(0, state, params), state_key(state)});

    std::priority_queue<int, std::vector<int>, FrontierOrder> open(FrontierOrder{&nodes});
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(config.node_budget) * 8);
    seen.insert(nodes.front().key);
    open.push(0);

    std::array<int, kActionCount> survived{};
    survived.fill(-1);

    PlanResult result;
    auto finish = [&](int idx) {
        const Node& n = nodes[static_cast<std::size_t>(idx)];
        result.path = path_to(nodes, idx);
        result.action = result.path.empty() ? Action{} : result.path.front();
        result.f = n.f;
        return result;
    };

    while (!open.empty() && result.expansions < config.node_budget) {
        const int idx = open.top();
        open.pop();
        ++result.expansions;
        result.expanded.push_back(nodes[static_cast<std::size_t>(idx)].key);

        // Hold jump while airborne, keep feet down while grounded: this is the tie-break order.
        const bool prefer_jump = !nodes[static_cast<std::size_t>(idx)].state.player.grounded;
        for (int pass = 0; pass < 2; ++pass) {
            for (const Action& a : config.action_set) {
                if (a.jump != (pass == 0 ? prefer_jump : !prefer_jump)) {
                    continue;
                }
                const Node& parent = nodes[static_cast<std::size_t>(idx)];
                if (!allowed(a, parent.state.player, config)) {
                    continue;
                }
                StepResult r = model.step(parent.state, a);
                const int first = parent.parent < 0 ? action_index(a) : parent.first;
                const int g = parent.g + 1;
                survived[static_cast<std::size_t>(first)] =
                    std::max(survived[static_cast<std::size_t>(first)], r.dead ? parent.g : g);
                if (r.dead) {
                    continue;
                }
                if (r.state.won) {
                    nodes.push_back({std::move(r.state), g, idx, a, first, static_cast<double>(g), 0});
                    result.reached_goal = true;
                    return finish(static_cast<int>(nodes.size()) - 1);
                }
                const std::uint64_t key = state_key(r.state);
                if (!seen.insert(key).second) {
                    continue;
                }
                const double f = f_value(g, r.state, params);
                nodes.push_back({std::move(r.state), g, idx, a, first, f, key});
                open.push(static_cast<int>(nodes.size()) - 1);
            }
        }
    }

    if (!open.empty()) {
        const int best = open.top();
        if (best != 0) {
            return finish(best);
        }
    }

    // Nothing alive on the frontier: take the first action that lasted longest.
    result.fallback = true;
    int best_first = -1;
    for (const Action& a : config.action_set) {
        const int i = action_index(a);
        if (survived[static_cast<std::size_t>(i)] > (best_first < 0 ? -1 : survived[static_cast<std::size_t>(best_first)])) {
            best_first = i;
        }
    }
    result.action = best_first >= 0 ? all_actions()[static_cast<std::size_t>(best_first)] : config.action_set.front();
    result.path = {result.action};
    result.f = nodes.front().f;
    return result;
}

Policy make_policy(const AgentConfig& config)
{
    config.validate();
    if (config.replan_interval == 1) {
        return [config](const GameState& s) { return plan(s, config); };
    }
    struct Buffer {
        std::vector<Action> actions;
        std::size_t next = 0;
    };
    auto buffer = std::make_shared<Buffer>();
    return [config, buffer](const GameState& s) {
        if (buffer->next >= buffer->actions.size()
            || buffer->next >= static_cast<std::size_t>(config.replan_interval)) {
            buffer->actions = plan_search(s, config).path;
            buffer->next = 0;
            if (buffer->actions.empty()) {
                buffer->actions.push_back(Action{});
            }
        }
        Action a = buffer->actions[buffer->next++];
        if (a.jump && s.player.jumping && s.player.jump_ticks_held >= config.max_jump_hold) {
            a.jump = false;
        }
        return a;
    };
}

Playthrough play(const Scene& scene, const AgentConfig& config, int tick_budget, const ForwardModel& execution_model)
{
    return simulate(scene, make_policy(config), tick_budget, execution_model);
}

} // namespace mechgen
