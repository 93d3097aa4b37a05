#include "mechgen/tile.hpp"

#include "mechgen/errors.hpp"

#include <array>
#include <string>

namespace mechgen {

AlphabetError::AlphabetError(char symbol, int row, int col)
    : FormatError("unknown tile symbol '" + std::string(1, symbol) + "' at (row " + std::to_string(row)
                  + ", col " + std::to_string(col) + ")"),
      symbol_(symbol),
      row_(row),
      col_(col)
{}

namespace {

// 0 = not in the alphabet, otherwise category + 1.
struct Table {
    std::array<unsigned char, 256> cat{};
    std::array<bool, 256> solid{};

    constexpr Table()
    {
        auto put = [this](char c, TileCategory t, bool is_solid) {
            cat[static_cast<unsigned char>(c)] = static_cast<unsigned char>(static_cast<int>(t) + 1);
            solid[static_cast<unsigned char>(c)] = is_solid;
        };
        put('-', TileCategory::empty, false);
        put('X', TileCategory::solid, true);
        put('S', TileCategory::breakable, true);
        put('?', TileCategory::question_block, true);
        put('M', TileCategory::question_block, true);
        put('o', TileCategory::coin, false);
        for (char c : {'<', '>', '[', ']'}) {
            put(c, TileCategory::pipe_part, true);
        }
        for (char c : {'g', 'k', 'r', 'K'}) {
            put(c, TileCategory::enemy_spawn, false);
        }
    }
};

constexpr Table kTable;

} // namespace

std::optional<TileCategory> category_of(char symbol)
{
    const unsigned char v = kTable.cat[static_cast<unsigned char>(symbol)];
    if (v == 0) {
        return std::nullopt;
    }
    return static_cast<TileCategory>(v - 1);
}

bool is_solid_symbol(char symbol) { return kTable.solid[static_cast<unsigned char>(symbol)]; }

std::string_view category_name(TileCategory category)
{
    switch (category) {
    case TileCategory::empty: return "empty";
    case TileCategory::solid: return "solid";
    case TileCategory::breakable: return "breakable";
    case TileCategory::question_block: return "question-block";
    case TileCategory::coin: return "coin";
    case TileCategory::pipe_part: return "pipe-part";
    case TileCategory::enemy_spawn: return "enemy-spawn";
    }
    return "unknown";
}

} // namespace mechgen
