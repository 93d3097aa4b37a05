#include "support.hpp"

#include "mechgen/errors.hpp"

#include <doctest.h>

#include <algorithm>

using namespace mechgen;
using namespace testing_support;

namespace {

Scene gap_scene(int first, int width)
{
    std::vector<std::pair<int, std::string>> o;
    for (int c = first; c < first + width; ++c) {
        o.emplace_back(c, pit());
    }
    return flat_scene(20, o);
}

} // namespace

TEST_CASE("agent names")
{
    for (auto k : {AgentKind::perfect, AgentKind::no_run, AgentKind::limited_jump, AgentKind::enemy_blind}) {
        CHECK(parse_agent(agent_name(k)) == k);
    }
    CHECK_FALSE(parse_agent("lazy").has_value());
}

TEST_CASE("plan: flat scene goes right")
{
    const GameState g = initial_state(flat_scene());
    const PlanResult r = plan_search(g, make_perfect());
    CHECK(r.action.direction == Direction::right);
    CHECK(r.expansions > 0);
    CHECK(r.expansions <= 800);
    CHECK_FALSE(r.path.empty());
    CHECK(r.path.front() == r.action);
}

TEST_CASE("play: perfect agent wins the flat scene and the calibration gaps")
{
    const BaseModel base;
    const AgentConfig perfect = make_perfect();
    const Scene flat = flat_scene();
    const Playthrough p = play(flat, perfect, default_tick_budget(flat), base);
    CHECK(p.won);
    CHECK(p.max_distance == 20.0);
    CHECK(play(gap_scene(8, 6), perfect, 200, base).won);
    CHECK(play(flat_scene(20, {{9, wall(4)}}), perfect, 200, base).won);
}

TEST_CASE("no-run stalls before a 6-wide gap")
{
    const Scene s = gap_scene(8, 6);
    const Playthrough p = play(s, make_limited(AgentKind::no_run), 200, BaseModel{});
    CHECK_FALSE(p.won);
    CHECK(p.max_distance < 14.0);
}

TEST_CASE("limited-jump cannot climb a 4-high wall")
{
    const Scene s = flat_scene(20, {{9, wall(4)}});
    const Playthrough p = play(s, make_limited(AgentKind::limited_jump), 200, BaseModel{});
    CHECK_FALSE(p.won);
    CHECK(p.max_distance < 9.0);
}

TEST_CASE("make_limited")
{
    const AgentConfig perfect = make_perfect();
    CHECK(perfect.action_set.size() == kActionCount);

    const AgentConfig no_run = make_limited(AgentKind::no_run, perfect);
    CHECK(no_run.action_set.size() == 6);
    CHECK(std::none_of(no_run.action_set.begin(), no_run.action_set.end(), [](const Action& a) { return a.run; }));
    CHECK(no_run.max_jump_hold == perfect.max_jump_hold);
    CHECK(no_run.planning_model == perfect.planning_model);

    const AgentConfig lj = make_limited(AgentKind::limited_jump, perfect);
    CHECK(lj.action_set == perfect.action_set);
    CHECK(lj.max_jump_hold == 2);
    CHECK(lj.planning_model == perfect.planning_model);

    const AgentConfig blind = make_limited(AgentKind::enemy_blind, perfect);
    CHECK(blind.action_set == perfect.action_set);
    CHECK(blind.max_jump_hold == perfect.max_jump_hold);
    CHECK(blind.node_budget == perfect.node_budget);
    CHECK(blind.planning_model != perfect.planning_model);

    CHECK(make_limited("no-run").action_set.size() == 6);
    CHECK_THROWS_AS(make_limited("perfect"), std::invalid_argument);
    CHECK_THROWS_AS(make_limited("sleepy"), std::invalid_argument);
    CHECK_THROWS_AS(make_limited(AgentKind::perfect), std::invalid_argument);
}

TEST_CASE("AgentConfig::validate")
{
    AgentConfig c = make_perfect();
    CHECK_NOTHROW(c.validate());
    c.node_budget = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = make_perfect();
    c.action_set.clear();
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = make_perfect();
    c.planning_model = nullptr;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("plan is a pure function of state and config")
{
    const SliceBank bank = corpus_bank();
    Rng rng(12);
    const AgentConfig perfect = make_perfect({}, 300);
    for (int i = 0; i < 10; ++i) {
        const Scene s = random_corpus_scene(bank, rng);
        GameState g = initial_state(s);
        for (int t = 0; t < 15; ++t) {
            g = step(g, all_actions()[static_cast<std::size_t>(rng() % kActionCount)]).state;
        }
        const PlanResult a = plan_search(g, perfect);
        const PlanResult b = plan_search(g, perfect);
        CHECK(a.action == b.action);
        CHECK(a.path == b.path);
        CHECK(a.f == b.f);
        CHECK(a.expanded == b.expanded);
    }
}

TEST_CASE("state_key ignores sub-quantum differences and sees tile changes")
{
    GameState g = initial_state(flat_scene());
    GameState h = g;
    h.player.x += 1e-4;
    CHECK(state_key(g) == state_key(h));
    h.player.x += 0.25;
    CHECK(state_key(g) != state_key(h));
    GameState t = g;
    t.set_cell(3, 10, 'o');
    CHECK(state_key(g) != state_key(t));
    t.set_cell(3, 10, '-');
    CHECK(state_key(g) == state_key(t));
}

TEST_CASE("budget monotonicity: expansions extend, chosen f never drops")
{
    const SliceBank bank = corpus_bank();
    Rng rng(5);
    for (int i = 0; i < 15; ++i) {
        const Scene s = random_corpus_scene(bank, rng);
        GameState g = initial_state(s);
        for (int t = 0; t < 10; ++t) {
            g = step(g, all_actions()[static_cast<std::size_t>(rng() % kActionCount)]).state;
        }
        double last_f = -1.0;
        std::vector<std::uint64_t> last_expanded;
        bool last_goal = false;
        for (int b : {10, 50, 200, 800}) {
            const PlanResult r = plan_search(g, make_perfect({}, b));
            CHECK(r.expansions <= b);
            REQUIRE(r.expanded.size() >= last_expanded.size());
            CHECK(std::equal(last_expanded.begin(), last_expanded.end(), r.expanded.begin()));
            if (!r.fallback && !last_goal) {
                CHECK(r.f >= last_f - 1e-9);
                last_f = r.f;
            }
            last_goal = r.reached_goal;
            last_expanded = r.expanded;
        }
    }
}

TEST_CASE("dominance: the perfect agent wins what no-run and limited-jump win")
{
    const SliceBank bank = corpus_bank();
    Rng rng(2023);
    const BaseModel base;
    const AgentConfig perfect = make_perfect();
    const AgentConfig limited[] = {make_limited(AgentKind::no_run, perfect),
                                   make_limited(AgentKind::limited_jump, perfect)};
    int limited_wins = 0;
    for (int i = 0; i < 40; ++i) {
        const Scene s = random_corpus_scene(bank, rng);
        const int budget = default_tick_budget(s);
        const bool perfect_won = play(s, perfect, budget, base).won;
        for (const auto& cfg : limited) {
            if (play(s, cfg, budget, base).won) {
                ++limited_wins;
                CHECK(perfect_won);
            }
        }
    }
    CHECK(limited_wins > 0);
}

TEST_CASE("enemy-blind: plans straight into a goomba")
{
    const Scene s = flat_scene(20, {{9, with_tile('g')}, {10, with_tile('g')}});
    const BaseModel base;
    const AgentConfig blind = make_limited(AgentKind::enemy_blind);
    const Playthrough p = play(s, blind, 200, base);
    CHECK(p.died);
    CHECK(play(s, make_perfect(), 200, base).won);
}

TEST_CASE("coin-punishing planner routes around a coin when it can")
{
    // coin floats at head height over column 8; jumping over it is the only coin-free route
    std::string col = ground();
    col[11] = 'o';
    col[10] = 'o';
    const Scene s = flat_scene(20, {{8, col}});
    AgentConfig punished = make_perfect();
    punished.planning_model = wrap_punishing(make_base_model(), PunishedMechanic::coin);
    const auto world = wrap_punishing(make_base_model(), PunishedMechanic::coin);
    const Playthrough avoid = play(s, punished, 200, *world);
    CHECK(avoid.won);
    CHECK(std::none_of(avoid.events.begin(), avoid.events.end(),
                       [](const MechanicEvent& e) { return e.kind == MechanicKind::coin; }));

    // walled in: the coin sits in a one-tile corridor under a ceiling
    std::string low = ground();
    low[11] = 'o';
    for (int r = 0; r <= 10; ++r) {
        low[static_cast<std::size_t>(r)] = 'X';
    }
    const Scene trapped = flat_scene(20, {{8, low}});
    const Playthrough stuck = play(trapped, punished, 200, *world);
    CHECK_FALSE(stuck.won);
    CHECK(play(trapped, make_perfect(), 200, BaseModel{}).won);
}

TEST_CASE("fallback when every successor dies")
{
    // standing over nothing: all futures fall out of the scene
    GameState g = initial_state(gap_scene(0, 20));
    const PlanResult r = plan_search(g, make_perfect({}, 100));
    CHECK(r.fallback);
    CHECK_FALSE(r.reached_goal);
}
