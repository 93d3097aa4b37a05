#pragma once

#include "mechgen/scene.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace mechgen {

using Rng = std::mt19937_64;

/// A level file's name (for error messages) and its text.
struct LevelText {
    std::string name;
    std::string text;
};

/// Multiset of corpus slices. Entries keep first-appearance order.
class SliceBank {
public:
    struct Entry {
        Slice slice;
        long count = 0;
    };

    SliceBank() = default;

    /// Adds `count` occurrences of `slice`.
    void add(const Slice& slice, long count = 1);

    const std::vector<Entry>& entries() const { return entries_; }
    long total() const { return total_; }
    std::size_t unique() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    long count_of(const Slice& slice) const;

    /// Draws a slice with probability count / total. Throws std::logic_error when empty.
    const Slice& sample(Rng& rng) const;

private:
    std::vector<Entry> entries_;
    std::vector<long> cumulative_;
    std::map<std::string, std::size_t> index_;
    long total_ = 0;
};

/// Every column of every level becomes one slice occurrence.
/// Throws FormatError naming the level and line when a level is malformed.
SliceBank extract_slices(const std::vector<LevelText>& levels, int height = 14);

inline const Slice& sample_slice(const SliceBank& bank, Rng& rng) { return bank.sample(rng); }

/// Character substitution table, e.g. for mapping VGLC symbols onto the tile alphabet.
using CharMap = std::map<char, char>;

/// Reads `src = dst` lines; '#' starts a comment. Whitespace-only lines are skipped.
CharMap parse_char_map(const std::string& text);
CharMap load_char_map(const std::filesystem::path& path);
std::string apply_char_map(const std::string& text, const CharMap& map);

/// Loads every regular file in `dir` (sorted by name), optionally remapping characters.
std::vector<LevelText> load_corpus_dir(const std::filesystem::path& dir, const std::optional<CharMap>& map = {});

/// `count<TAB>tiles` per line.
std::string serialize_bank(const SliceBank& bank);
SliceBank parse_bank(const std::string& text);

std::string read_file(const std::filesystem::path& path);

} // namespace mechgen
