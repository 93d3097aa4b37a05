#pragma once

// Scene builders and scripted policies shared by the test binaries.

#include "mechgen/agent.hpp"
#include "mechgen/corpus.hpp"
#include "mechgen/scene.hpp"

#include <memory>
#include <string>
#include <vector>

#ifndef MECHGEN_SOURCE_DIR
#define MECHGEN_SOURCE_DIR "."
#endif

namespace testing_support {

using namespace mechgen;

inline std::string corpus_dir() { return std::string(MECHGEN_SOURCE_DIR) + "/data/corpus"; }

inline SliceBank corpus_bank() { return extract_slices(load_corpus_dir(corpus_dir())); }

/// Empty sky over two rows of ground.
inline std::string ground(int height = 14) { return std::string(static_cast<std::size_t>(height - 2), '-') + "XX"; }

inline std::string pit(int height = 14) { return std::string(static_cast<std::size_t>(height), '-'); }

/// Ground with a solid block `h` tiles tall on top.
inline std::string wall(int h, int height = 14)
{
    std::string c = ground(height);
    for (int r = height - 3; r > height - 3 - h; --r) {
        c[static_cast<std::size_t>(r)] = 'X';
    }
    return c;
}

/// Ground with `symbol` standing on it (enemy or coin) at row height - 3.
inline std::string with_tile(char symbol, int row = 11, int height = 14)
{
    std::string c = ground(height);
    c[static_cast<std::size_t>(row)] = symbol;
    return c;
}

inline Scene scene_of(const std::vector<std::string>& columns, int padding = 3)
{
    std::vector<Slice> cols;
    for (const auto& c : columns) {
        cols.emplace_back(c);
    }
    return Scene::from_columns(std::move(cols), padding);
}

/// `width` ground columns with overrides at given positions.
inline Scene flat_scene(int width = 20, std::vector<std::pair<int, std::string>> overrides = {})
{
    std::vector<std::string> cols(static_cast<std::size_t>(width), ground());
    for (auto& [i, c] : overrides) {
        cols[static_cast<std::size_t>(i)] = c;
    }
    return scene_of(cols);
}

inline Scene random_corpus_scene(const SliceBank& bank, Rng& rng, const SceneShape& shape = {})
{
    std::vector<Slice> core;
    for (int i = 0; i < shape.core_width; ++i) {
        core.push_back(bank.sample(rng));
    }
    return Scene::from_core(core, shape);
}

/// Moves right; once grounded with x >= trigger, holds jump for `hold` ticks, then never again.
inline Policy jump_at(double trigger, int hold, bool run)
{
    struct St {
        int held = -1;
    };
    auto st = std::make_shared<St>();
    return [=](const GameState& s) {
        Action a{Direction::right, false, run};
        if (st->held < 0 && s.player.grounded && s.player.x >= trigger) {
            st->held = 0;
        }
        if (st->held >= 0 && st->held < hold) {
            a.jump = true;
            ++st->held;
        }
        return a;
    };
}

} // namespace testing_support
