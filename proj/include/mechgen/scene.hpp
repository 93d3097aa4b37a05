#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mechgen {

/// Dimensions shared by every scene in a run.
struct SceneShape {
    int height = 14;     ///< rows per slice
    int core_width = 14; ///< evolvable slices
    int padding = 3;     ///< floor slices on each side
    int floor_rows = 2;  ///< ground thickness of a padding slice

    int width() const { return core_width + 2 * padding; }
    bool operator==(const SceneShape&) const = default;
};

/// One vertical column of tiles, top row first. Slices compare by exact content.
///
/// Enemy markers are tiles in their own right, so an enemy always occupies a
/// non-solid cell and can never start embedded in ground.
class Slice {
public:
    Slice() = default;
    explicit Slice(std::string tiles);

    const std::string& tiles() const { return tiles_; }
    char operator[](int row) const { return tiles_[static_cast<std::size_t>(row)]; }
    int height() const { return static_cast<int>(tiles_.size()); }

    /// Empty sky above `floor_rows` of ground.
    static Slice floor(int height, int floor_rows);

    auto operator<=>(const Slice&) const = default;

private:
    std::string tiles_;
};

/// A playable scene: `padding` floor slices, the evolvable core, `padding` floor slices.
class Scene {
public:
    Scene() = default;

    /// Builds the phenotype from a genotype by wrapping it in floor padding.
    static Scene from_core(const std::vector<Slice>& core, const SceneShape& shape);

    /// Takes all columns verbatim; the first and last `padding` columns are the padding.
    static Scene from_columns(std::vector<Slice> columns, int padding);

    int width() const { return static_cast<int>(columns_.size()); }
    int height() const { return columns_.empty() ? 0 : columns_.front().height(); }
    int padding() const { return padding_; }
    int core_width() const { return width() - 2 * padding_; }

    char at(int row, int col) const { return columns_[static_cast<std::size_t>(col)][row]; }
    const Slice& column(int col) const { return columns_[static_cast<std::size_t>(col)]; }
    const std::vector<Slice>& columns() const { return columns_; }
    std::vector<Slice> core() const;

    bool operator==(const Scene&) const = default;

private:
    std::vector<Slice> columns_;
    int padding_ = 0;
};

/// Parses `height` lines of equal length (>= 2*padding+1) over the tile alphabet.
/// Throws FormatError for ragged or miscounted lines, AlphabetError for unknown symbols.
Scene parse_scene(std::string_view text, int height = 14, int padding = 3);

/// One line per row, newline-terminated. Inverse of parse_scene.
std::string serialize_scene(const Scene& scene);

/// Splits text into lines, accepting "\n" or "\r\n" and an optional trailing newline.
std::vector<std::string> split_lines(std::string_view text);

} // namespace mechgen
