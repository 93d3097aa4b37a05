#pragma once

#include "mechgen/scene.hpp"

#include <array>
#include <cstdint>
#include <string_view>
#include <optional>
#include <vector>

namespace mechgen {

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

enum class Direction : std::int8_t { left = -1, none = 0, right = 1 };

struct Action {
    Direction direction = Direction::none;
    bool jump = false;
    bool run = false;

    bool operator==(const Action&) const = default;
};

inline constexpr int kActionCount = 12;

/// All 12 actions in canonical order: direction (right, none, left) x run (on, off) x jump (off, on).
const std::array<Action, kActionCount>& all_actions();

/// Position of `a` in all_actions().
int action_index(const Action& a);

std::string action_name(const Action& a);

// ---------------------------------------------------------------------------
// Mechanic events
// ---------------------------------------------------------------------------

enum class MechanicKind : std::uint8_t {
    jump,
    high_jump,
    long_jump,
    speed,
    stomp,
    shell_kill,
    fall_kill,
    mushroom,
    coin,
};

inline constexpr int kMechanicKindCount = 9;

std::string_view mechanic_name(MechanicKind kind);
std::optional<MechanicKind> parse_mechanic(std::string_view name);

struct MechanicEvent {
    MechanicKind kind = MechanicKind::jump;
    int tick = 0;
    double x = 0.0;

    bool operator==(const MechanicEvent&) const = default;
};

// ---------------------------------------------------------------------------
// Physics constants
// ---------------------------------------------------------------------------

/// Units are tiles and ticks; y grows downward, row 0 is the top of the scene.
struct PhysicsParams {
    double gravity = 0.10;
    double max_fall_speed = 0.50;
    double walk_max_speed = 0.15;
    double run_max_speed = 0.30;
    double walk_accel = 0.03;
    double run_accel = 0.05;
    double friction = 0.03;
    double jump_impulse = 0.50;
    int jump_hold_ticks = 8;
    double jump_hold_boost = 0.09; ///< upward acceleration added to gravity while jump is held
    double stomp_bounce = 0.40;

    double player_half_width = 0.40;
    double small_height = 0.95;
    double big_height = 1.90;
    int hurt_invulnerable_ticks = 32;

    double enemy_half_width = 0.40;
    double enemy_height = 0.95;
    double enemy_speed = 0.05;
    double winged_hop = 0.50;
    double shell_speed = 0.35;
    int shell_grace_ticks = 8;
    double mushroom_speed = 0.10;

    // event thresholds
    double high_jump_apex = 2.5;    ///< tiles above takeoff
    double long_jump_distance = 4.0; ///< tiles between takeoff and landing
    int punish_hold_ticks = 4;      ///< punishing high-jump model: hold longer than this

    double start_x = 1.5;
};

// ---------------------------------------------------------------------------
// State
// ---------------------------------------------------------------------------

enum class EntityKind : std::uint8_t {
    goomba,
    green_koopa,
    red_koopa,
    winged_koopa,
    shell,
    mushroom,
    coin_pickup,
};

std::string_view entity_name(EntityKind kind);

/// Goombas and koopas. Shells are kicked objects, not live enemies.
inline bool is_live_enemy(EntityKind k)
{
    return k == EntityKind::goomba || k == EntityKind::green_koopa || k == EntityKind::red_koopa
        || k == EntityKind::winged_koopa;
}

/// Everything the enemy-blind view removes.
inline bool is_enemy(EntityKind k) { return is_live_enemy(k) || k == EntityKind::shell; }

struct Entity {
    EntityKind kind = EntityKind::goomba;
    double x = 0.0; ///< centre
    double y = 0.0; ///< feet
    double vx = 0.0;
    double vy = 0.0;
    bool grounded = false;
    bool alive = true;
    int grace = 0; ///< ticks during which a freshly kicked shell cannot hurt the player
};

enum class Power : std::uint8_t { small, big };

struct Player {
    double x = 0.0; ///< centre
    double y = 0.0; ///< feet
    double vx = 0.0;
    double vy = 0.0;
    bool grounded = false;
    Power power = Power::small;
    int jump_hold_remaining = 0;
    int jump_ticks_held = 0; ///< ticks of the current jump with the button held, takeoff included
    bool jumping = false;    ///< airborne since a takeoff, not yet landed
    bool jump_latched = false; ///< jump was pressed last tick; must release before the next takeoff
    bool high_jump_fired = false;
    bool speeding = false;
    double takeoff_x = 0.0;
    double takeoff_y = 0.0;
    int invulnerable = 0;
};

/// Full simulation state. Copyable value; the tile grid is mutable (coins, bumped blocks).
struct GameState {
    int width = 0;
    int height = 0;
    std::vector<char> cells; ///< column-major, width * height
    Player player;
    std::vector<Entity> entities;
    int tick = 0;
    double max_x = 0.0;
    bool won = false;
    int despawned_pickups = 0; ///< mushrooms lost off-screen without being collected
    std::uint64_t grid_hash = 0; ///< Zobrist-style hash of `cells`, kept current by set_cell

    char cell(int row, int col) const;
    void set_cell(int row, int col, char value);
};

/// Player at x = start_x standing on the floor of its column; one entity per enemy tile.
GameState initial_state(const Scene& scene, const PhysicsParams& params = {});

struct StepResult {
    GameState state;
    std::vector<MechanicEvent> events;
    bool dead = false;
};

/// One tick of the game. Total and deterministic.
StepResult step(const GameState& state, const Action& action, const PhysicsParams& params = {});

double player_height(const Player& p, const PhysicsParams& params);

/// Goombas and koopas still alive.
int live_enemy_count(const GameState& state);

/// Coins, unbumped question blocks and free mushrooms, plus mushrooms already lost off-screen.
/// Bumping a mushroom block keeps this constant; each COIN or MUSHROOM event lowers it by one.
int pickup_count(const GameState& state);

} // namespace mechgen
