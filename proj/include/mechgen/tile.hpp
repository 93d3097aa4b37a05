#pragma once

#include <optional>
#include <string_view>

namespace mechgen {

enum class TileCategory {
    empty,
    solid,
    breakable,
    question_block,
    coin,
    pipe_part,
    enemy_spawn,
};

/// The closed tile alphabet. Every symbol belongs to exactly one category.
///
///   '-' empty          'X' ground          'S' breakable brick
///   '?' coin block     'M' mushroom block  'o' coin
///   '<' '>' '[' ']' pipe parts (top-left, top-right, body-left, body-right)
///   'g' goomba  'k' green koopa  'r' red koopa  'K' winged green koopa
inline constexpr std::string_view kAlphabet = "-XS?Mo<>[]gkrK";

inline constexpr char kEmpty = '-';
inline constexpr char kGround = 'X';
inline constexpr char kBrick = 'S';
inline constexpr char kCoinBlock = '?';
inline constexpr char kMushroomBlock = 'M';
inline constexpr char kCoin = 'o';
inline constexpr char kGoomba = 'g';
inline constexpr char kGreenKoopa = 'k';
inline constexpr char kRedKoopa = 'r';
inline constexpr char kWingedKoopa = 'K';

std::optional<TileCategory> category_of(char symbol);

inline bool in_alphabet(char symbol) { return category_of(symbol).has_value(); }

/// Player and enemies collide with these.
bool is_solid_symbol(char symbol);

std::string_view category_name(TileCategory category);

} // namespace mechgen
