#include "mechgen/engine.hpp"

#include "mechgen/tile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mechgen {

namespace {

constexpr double kEps = 1e-9;
constexpr char kUsedBlock = 'U'; // runtime only: a question block after its content is taken
constexpr double kStompTolerance = 0.35;

bool runtime_solid(char c) { return c == kUsedBlock || is_solid_symbol(c); }

struct Span {
    int lo;
    int hi;
};

// Integer cells overlapping the open interval (a, b).
Span span(double a, double b) { return {static_cast<int>(std::floor(a)), static_cast<int>(std::ceil(b)) - 1}; }

// The left edge of the scene is a wall; everything right of it, above it or below it is open.
bool solid_at(const GameState& s, int row, int col)
{
    if (col < 0) {
        return true;
    }
    if (col >= s.width || row < 0 || row >= s.height) {
        return false;
    }
    return runtime_solid(s.cell(row, col));
}

struct Body {
    double& x;
    double& y;
    double& vx;
    double& vy;
    double half_width;
    double height;
};

// Moves horizontally and stops against walls. Returns true on contact.
bool move_x(const GameState& s, Body b)
{
    if (b.vx == 0.0) {
        return false;
    }
    b.x += b.vx;
    const Span cols = span(b.x - b.half_width, b.x + b.half_width);
    const Span rows = span(b.y - b.height, b.y);
    if (b.vx > 0) {
        for (int c = cols.lo; c <= cols.hi; ++c) {
            for (int r = rows.lo; r <= rows.hi; ++r) {
                if (solid_at(s, r, c)) {
                    b.x = c - b.half_width - kEps;
                    return true;
                }
            }
        }
    } else {
        for (int c = cols.hi; c >= cols.lo; --c) {
            for (int r = rows.lo; r <= rows.hi; ++r) {
                if (solid_at(s, r, c)) {
                    b.x = c + 1 + b.half_width + kEps;
                    return true;
                }
            }
        }
    }
    return false;
}

struct VerticalContact {
    bool landed = false;
    bool bumped = false;
    int bump_row = 0;
    int bump_col = 0;
};

VerticalContact move_y(const GameState& s, Body b)
{
    VerticalContact contact;
    if (b.vy == 0.0) {
        return contact;
    }
    b.y += b.vy;
    const Span cols = span(b.x - b.half_width, b.x + b.half_width);
    const Span rows = span(b.y - b.height, b.y);
    if (b.vy > 0) {
        for (int r = rows.lo; r <= rows.hi; ++r) {
            for (int c = cols.lo; c <= cols.hi; ++c) {
                if (solid_at(s, r, c)) {
                    b.y = r;
                    b.vy = 0.0;
                    contact.landed = true;
                    return contact;
                }
            }
        }
    } else {
        for (int r = rows.hi; r >= rows.lo; --r) {
            bool found = false;
            int best = -1;
            double best_dist = 0.0;
            for (int c = cols.lo; c <= cols.hi; ++c) {
                if (solid_at(s, r, c)) {
                    const double dist = std::abs((c + 0.5) - b.x);
                    if (!found || dist < best_dist) {
                        found = true;
                        best = c;
                        best_dist = dist;
                    }
                }
            }
            if (found) {
                b.y = r + 1 + b.height + kEps;
                b.vy = 0.0;
                contact.bumped = true;
                contact.bump_row = r;
                contact.bump_col = best;
                return contact;
            }
        }
    }
    return contact;
}

bool overlaps(double ax, double ay, double ahw, double ah, double bx, double by, double bhw, double bh)
{
    return std::abs(ax - bx) < ahw + bhw && ay - ah < by && by - bh < ay;
}

void apply_horizontal_input(Player& p, const Action& a, const PhysicsParams& P)
{
    const int dir = static_cast<int>(a.direction);
    const double max_speed = a.run ? P.run_max_speed : P.walk_max_speed;
    const double accel = a.run ? P.run_accel : P.walk_accel;
    if (dir != 0) {
        double v = p.vx + dir * accel;
        if (std::abs(v) > max_speed) {
            v = std::copysign(std::max(max_speed, std::abs(p.vx) - P.friction), v);
        }
        p.vx = v;
    } else if (std::abs(p.vx) <= P.friction) {
        p.vx = 0.0;
    } else {
        p.vx -= std::copysign(P.friction, p.vx);
    }
}

void update_entity(GameState& s, Entity& e, const PhysicsParams& P)
{
    if (e.kind == EntityKind::coin_pickup) {
        return;
    }
    if (e.grace > 0) {
        --e.grace;
    }
    const double hw = P.enemy_half_width;
    const double h = P.enemy_height;

    if (e.kind == EntityKind::red_koopa && e.grounded && e.vx != 0.0) {
        const double dir = e.vx > 0 ? 1.0 : -1.0;
        const int col = static_cast<int>(std::floor(e.x + dir * hw + e.vx));
        const int row = static_cast<int>(std::floor(e.y + 0.01));
        if (!solid_at(s, row, col)) {
            e.vx = -e.vx;
        }
    }
    if (e.kind == EntityKind::winged_koopa && e.grounded) {
        e.vy = -P.winged_hop;
    }
    e.vy = std::min(e.vy + P.gravity, P.max_fall_speed);

    if (move_x(s, {e.x, e.y, e.vx, e.vy, hw, h})) {
        e.vx = -e.vx;
    }
    if (e.x + hw > s.width) {
        e.x = s.width - hw - kEps;
        e.vx = -std::abs(e.vx);
    }
    const VerticalContact contact = move_y(s, {e.x, e.y, e.vx, e.vy, hw, h});
    e.grounded = contact.landed;
}

} // namespace

// ---------------------------------------------------------------------------

const std::array<Action, kActionCount>& all_actions()
{
    static const std::array<Action, kActionCount> actions = [] {
        std::array<Action, kActionCount> out{};
        int i = 0;
        for (Direction d : {Direction::right, Direction::none, Direction::left}) {
            for (bool run : {true, false}) {
                for (bool jump : {false, true}) {
                    out[static_cast<std::size_t>(i++)] = Action{d, jump, run};
                }
            }
        }
        return out;
    }();
    return actions;
}

int action_index(const Action& a)
{
    const int d = a.direction == Direction::right ? 0 : a.direction == Direction::none ? 1 : 2;
    return d * 4 + (a.run ? 0 : 2) + (a.jump ? 1 : 0);
}

std::string action_name(const Action& a)
{
    std::string s = a.direction == Direction::right ? "right" : a.direction == Direction::left ? "left" : "none";
    if (a.run) {
        s += "+run";
    }
    if (a.jump) {
        s += "+jump";
    }
    return s;
}

std::string_view mechanic_name(MechanicKind kind)
{
    switch (kind) {
    case MechanicKind::jump: return "JUMP";
    case MechanicKind::high_jump: return "HIGH_JUMP";
    case MechanicKind::long_jump: return "LONG_JUMP";
    case MechanicKind::speed: return "SPEED";
    case MechanicKind::stomp: return "STOMP";
    case MechanicKind::shell_kill: return "SHELL_KILL";
    case MechanicKind::fall_kill: return "FALL_KILL";
    case MechanicKind::mushroom: return "MUSHROOM";
    case MechanicKind::coin: return "COIN";
    }
    return "?";
}

std::optional<MechanicKind> parse_mechanic(std::string_view name)
{
    for (int i = 0; i < kMechanicKindCount; ++i) {
        const auto k = static_cast<MechanicKind>(i);
        if (mechanic_name(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::string_view entity_name(EntityKind kind)
{
    switch (kind) {
    case EntityKind::goomba: return "goomba";
    case EntityKind::green_koopa: return "green-koopa";
    case EntityKind::red_koopa: return "red-koopa";
    case EntityKind::winged_koopa: return "winged-koopa";
    case EntityKind::shell: return "shell";
    case EntityKind::mushroom: return "mushroom";
    case EntityKind::coin_pickup: return "coin-pickup";
    }
    return "?";
}

char GameState::cell(int row, int col) const
{
    return cells[static_cast<std::size_t>(col * height + row)];
}

namespace {

std::uint64_t cell_token(std::size_t index, char value)
{
    std::uint64_t z = (static_cast<std::uint64_t>(index) << 8 | static_cast<unsigned char>(value)) + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

void GameState::set_cell(int row, int col, char value)
{
    const auto i = static_cast<std::size_t>(col * height + row);
    grid_hash ^= cell_token(i, cells[i]) ^ cell_token(i, value);
    cells[i] = value;
}

double player_height(const Player& p, const PhysicsParams& params)
{
    return p.power == Power::big ? params.big_height : params.small_height;
}

GameState initial_state(const Scene& scene, const PhysicsParams& params)
{
    GameState s;
    s.width = scene.width();
    s.height = scene.height();
    s.cells.resize(static_cast<std::size_t>(s.width * s.height));
    for (int c = 0; c < s.width; ++c) {
        for (int r = 0; r < s.height; ++r) {
            const char t = scene.at(r, c);
            if (category_of(t) == TileCategory::enemy_spawn) {
                Entity e;
                e.kind = t == kGoomba        ? EntityKind::goomba
                       : t == kGreenKoopa    ? EntityKind::green_koopa
                       : t == kRedKoopa      ? EntityKind::red_koopa
                                             : EntityKind::winged_koopa;
                e.x = c + 0.5;
                e.y = r + 1.0;
                e.vx = -params.enemy_speed;
                s.entities.push_back(e);
                s.set_cell(r, c, kEmpty);
            } else {
                s.set_cell(r, c, t);
            }
        }
    }

    Player& p = s.player;
    p.x = params.start_x;
    p.y = s.height;
    const int col = static_cast<int>(std::floor(p.x));
    for (int r = 0; r < s.height; ++r) {
        if (solid_at(s, r, col)) {
            p.y = r;
            p.grounded = true;
            break;
        }
    }
    s.max_x = p.x;
    return s;
}

int live_enemy_count(const GameState& state)
{
    return static_cast<int>(std::count_if(state.entities.begin(), state.entities.end(),
                                          [](const Entity& e) { return e.alive && is_live_enemy(e.kind); }));
}

int pickup_count(const GameState& state)
{
    int n = state.despawned_pickups;
    for (char c : state.cells) {
        n += (c == kCoin || c == kCoinBlock || c == kMushroomBlock) ? 1 : 0;
    }
    for (const auto& e : state.entities) {
        n += (e.alive && (e.kind == EntityKind::mushroom || e.kind == EntityKind::coin_pickup)) ? 1 : 0;
    }
    return n;
}

StepResult step(const GameState& in, const Action& a, const PhysicsParams& P)
{
    StepResult out{in, {}, false};
    GameState& s = out.state;
    Player& p = s.player;
    s.tick += 1;
    auto emit = [&](MechanicKind k, double x) { out.events.push_back({k, s.tick, x}); };

    if (p.invulnerable > 0) {
        --p.invulnerable;
    }
    const double prev_y = p.y;

    // --- player -----------------------------------------------------------
    apply_horizontal_input(p, a, P);

    if (a.jump && p.grounded && !p.jump_latched) {
        p.vy = -P.jump_impulse;
        p.grounded = false;
        p.jumping = true;
        p.jump_hold_remaining = P.jump_hold_ticks;
        p.jump_ticks_held = 0;
        p.takeoff_x = p.x;
        p.takeoff_y = p.y;
        p.high_jump_fired = false;
        emit(MechanicKind::jump, p.x);
    }
    p.jump_latched = a.jump;

    if (p.jumping && a.jump && p.jump_hold_remaining > 0 && p.vy < 0) {
        p.vy += P.gravity - P.jump_hold_boost;
        --p.jump_hold_remaining;
        ++p.jump_ticks_held;
    } else {
        p.vy += P.gravity;
        if (!a.jump) {
            p.jump_hold_remaining = 0;
        }
    }
    p.vy = std::min(p.vy, P.max_fall_speed);

    double h = player_height(p, P);
    if (move_x(s, {p.x, p.y, p.vx, p.vy, P.player_half_width, h})) {
        p.vx = 0.0;
    }
    const VerticalContact contact = move_y(s, {p.x, p.y, p.vx, p.vy, P.player_half_width, h});
    p.grounded = contact.landed;
    if (contact.landed && p.jumping) {
        if (std::abs(p.x - p.takeoff_x) > P.long_jump_distance) {
            emit(MechanicKind::long_jump, p.x);
        }
        p.jumping = false;
    }
    if (contact.bumped) {
        p.jump_hold_remaining = 0;
        if (contact.bump_col >= 0) {
            const int r = contact.bump_row;
            const int c = contact.bump_col;
            const char t = s.cell(r, c);
            if (t == kCoinBlock) {
                s.set_cell(r, c, kUsedBlock);
                emit(MechanicKind::coin, c + 0.5);
            } else if (t == kMushroomBlock) {
                s.set_cell(r, c, kUsedBlock);
                Entity m;
                m.kind = EntityKind::mushroom;
                m.x = c + 0.5;
                m.y = r;
                m.vx = P.mushroom_speed;
                s.entities.push_back(m);
            } else if (t == kBrick && p.power == Power::big) {
                s.set_cell(r, c, kEmpty);
            }
        }
    }

    if (p.jumping && !p.high_jump_fired && p.takeoff_y - p.y > P.high_jump_apex) {
        p.high_jump_fired = true;
        emit(MechanicKind::high_jump, p.x);
    }

    const bool speeding = std::abs(p.vx) > P.walk_max_speed;
    if (speeding && !p.speeding) {
        emit(MechanicKind::speed, p.x);
    }
    p.speeding = speeding;

    {
        const Span cols = span(p.x - P.player_half_width, p.x + P.player_half_width);
        const Span rows = span(p.y - h, p.y);
        for (int c = std::max(cols.lo, 0); c <= std::min(cols.hi, s.width - 1); ++c) {
            for (int r = std::max(rows.lo, 0); r <= std::min(rows.hi, s.height - 1); ++r) {
                if (s.cell(r, c) == kCoin) {
                    s.set_cell(r, c, kEmpty);
                    emit(MechanicKind::coin, c + 0.5);
                }
            }
        }
    }

    // --- entities ---------------------------------------------------------
    for (auto& e : s.entities) {
        if (!e.alive) {
            continue;
        }
        update_entity(s, e, P);
        if (e.y > s.height) {
            e.alive = false;
            if (is_live_enemy(e.kind)) {
                emit(MechanicKind::fall_kill, e.x);
            } else if (e.kind == EntityKind::mushroom) {
                ++s.despawned_pickups;
            }
        }
    }

    for (auto& shell : s.entities) {
        if (!shell.alive || shell.kind != EntityKind::shell || shell.vx == 0.0) {
            continue;
        }
        for (auto& victim : s.entities) {
            if (victim.alive && is_live_enemy(victim.kind)
                && overlaps(shell.x, shell.y, P.enemy_half_width, P.enemy_height, victim.x, victim.y,
                            P.enemy_half_width, P.enemy_height)) {
                victim.alive = false;
                emit(MechanicKind::shell_kill, victim.x);
            }
        }
    }

    // --- player vs entities -------------------------------------------------
    const bool descending = p.y > prev_y;
    auto hurt = [&] {
        if (p.invulnerable > 0) {
            return;
        }
        if (p.power == Power::big) {
            p.power = Power::small;
            p.invulnerable = P.hurt_invulnerable_ticks;
        } else {
            out.dead = true;
        }
    };
    auto bounce = [&] {
        p.vy = -P.stomp_bounce;
        p.jumping = false;
        p.jump_hold_remaining = 0;
        p.grounded = false;
    };

    for (auto& e : s.entities) {
        h = player_height(p, P);
        if (!e.alive
            || !overlaps(p.x, p.y, P.player_half_width, h, e.x, e.y, P.enemy_half_width, P.enemy_height)) {
            continue;
        }
        const bool from_above = descending && prev_y <= e.y - P.enemy_height + kStompTolerance;
        if (is_live_enemy(e.kind)) {
            if (from_above) {
                emit(MechanicKind::stomp, p.x);
                if (e.kind == EntityKind::goomba) {
                    e.alive = false;
                } else {
                    e.kind = EntityKind::shell;
                    e.vx = 0.0;
                    e.vy = 0.0;
                    e.grace = P.shell_grace_ticks;
                }
                bounce();
            } else {
                hurt();
            }
        } else if (e.kind == EntityKind::shell) {
            if (e.vx == 0.0) {
                e.vx = (e.x >= p.x ? 1.0 : -1.0) * P.shell_speed;
                e.grace = P.shell_grace_ticks;
                if (from_above) {
                    bounce();
                }
            } else if (from_above) {
                e.vx = 0.0;
                e.grace = P.shell_grace_ticks;
                bounce();
            } else if (e.grace == 0) {
                hurt();
            }
        } else if (e.kind == EntityKind::mushroom) {
            e.alive = false;
            p.power = Power::big;
            emit(MechanicKind::mushroom, p.x);
        } else if (e.kind == EntityKind::coin_pickup) {
            e.alive = false;
            emit(MechanicKind::coin, p.x);
        }
    }

    std::erase_if(s.entities, [](const Entity& e) { return !e.alive; });

    // --- outcome ----------------------------------------------------------
    if (p.x >= s.width) {
        s.won = true;
        s.max_x = s.width;
        out.dead = false;
    } else {
        s.max_x = std::max(s.max_x, p.x);
        if (p.y > s.height) {
            out.dead = true;
        }
    }
    return out;
}

} // namespace mechgen
