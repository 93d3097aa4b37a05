#include "mechgen/scene.hpp"

#include "mechgen/errors.hpp"
#include "mechgen/tile.hpp"

#include <utility>

namespace mechgen {

Slice::Slice(std::string tiles) : tiles_(std::move(tiles))
{
    for (std::size_t r = 0; r < tiles_.size(); ++r) {
        if (!in_alphabet(tiles_[r])) {
            throw AlphabetError(tiles_[r], static_cast<int>(r), 0);
        }
    }
}

Slice Slice::floor(int height, int floor_rows)
{
    std::string tiles(static_cast<std::size_t>(height), kEmpty);
    for (int r = height - floor_rows; r < height; ++r) {
        tiles[static_cast<std::size_t>(r)] = kGround;
    }
    return Slice(std::move(tiles));
}

Scene Scene::from_core(const std::vector<Slice>& core, const SceneShape& shape)
{
    if (static_cast<int>(core.size()) != shape.core_width) {
        throw FormatError("genotype has " + std::to_string(core.size()) + " slices, expected "
                          + std::to_string(shape.core_width));
    }
    const Slice pad = Slice::floor(shape.height, shape.floor_rows);
    std::vector<Slice> columns;
    columns.reserve(static_cast<std::size_t>(shape.width()));
    columns.insert(columns.end(), static_cast<std::size_t>(shape.padding), pad);
    for (const auto& s : core) {
        if (s.height() != shape.height) {
            throw FormatError("slice height " + std::to_string(s.height()) + " != "
                              + std::to_string(shape.height));
        }
        columns.push_back(s);
    }
    columns.insert(columns.end(), static_cast<std::size_t>(shape.padding), pad);
    return from_columns(std::move(columns), shape.padding);
}

Scene Scene::from_columns(std::vector<Slice> columns, int padding)
{
    if (static_cast<int>(columns.size()) < 2 * padding + 1) {
        throw FormatError("scene narrower than its padding");
    }
    Scene scene;
    scene.columns_ = std::move(columns);
    scene.padding_ = padding;
    return scene;
}

std::vector<Slice> Scene::core() const
{
    return {columns_.begin() + padding_, columns_.end() - padding_};
}

std::vector<std::string> split_lines(std::string_view text)
{
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string line(text.substr(start, end - start));
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        lines.push_back(std::move(line));
        start = end + 1;
    }
    return lines;
}

Scene parse_scene(std::string_view text, int height, int padding)
{
    const auto lines = split_lines(text);
    if (static_cast<int>(lines.size()) != height) {
        throw FormatError("expected " + std::to_string(height) + " lines, got " + std::to_string(lines.size()));
    }
    const std::size_t width = lines.front().size();
    if (static_cast<int>(width) < 2 * padding + 1) {
        throw FormatError("line 0 has " + std::to_string(width) + " columns, need at least "
                          + std::to_string(2 * padding + 1));
    }
    for (std::size_t r = 0; r < lines.size(); ++r) {
        if (lines[r].size() != width) {
            throw FormatError("ragged line " + std::to_string(r) + ": " + std::to_string(lines[r].size())
                              + " columns, expected " + std::to_string(width));
        }
        for (std::size_t c = 0; c < width; ++c) {
            if (!in_alphabet(lines[r][c])) {
                throw AlphabetError(lines[r][c], static_cast<int>(r), static_cast<int>(c));
            }
        }
    }

    std::vector<Slice> columns;
    columns.reserve(width);
    for (std::size_t c = 0; c < width; ++c) {
        std::string col(static_cast<std::size_t>(height), kEmpty);
        for (int r = 0; r < height; ++r) {
            col[static_cast<std::size_t>(r)] = lines[static_cast<std::size_t>(r)][c];
        }
        columns.emplace_back(std::move(col));
    }
    return Scene::from_columns(std::move(columns), padding);
}

std::string serialize_scene(const Scene& scene)
{
    std::string out;
    out.reserve(static_cast<std::size_t>((scene.width() + 1) * scene.height()));
    for (int r = 0; r < scene.height(); ++r) {
        for (int c = 0; c < scene.width(); ++c) {
            out.push_back(scene.at(r, c));
        }
        out.push_back('\n');
    }
    return out;
}

} // namespace mechgen
