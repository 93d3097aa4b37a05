#include "mechgen/corpus.hpp"

#include "mechgen/errors.hpp"
#include "mechgen/tile.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mechgen {

void SliceBank::add(const Slice& slice, long count)
{
    if (count <= 0) {
        throw std::invalid_argument("slice count must be positive");
    }
    auto [it, inserted] = index_.try_emplace(slice.tiles(), entries_.size());
    if (inserted) {
        entries_.push_back({slice, count});
        cumulative_.push_back(total_ + count);
    } else {
        entries_[it->second].count += count;
        for (std::size_t i = it->second; i < cumulative_.size(); ++i) {
            cumulative_[i] += count;
        }
    }
    total_ += count;
}

long SliceBank::count_of(const Slice& slice) const
{
    auto it = index_.find(slice.tiles());
    return it == index_.end() ? 0 : entries_[it->second].count;
}

const Slice& SliceBank::sample(Rng& rng) const
{
    if (entries_.empty()) {
        throw std::logic_error("cannot sample from an empty slice bank");
    }
    std::uniform_int_distribution<long> pick(0, total_ - 1);
    const long ticket = pick(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), ticket);
    return entries_[static_cast<std::size_t>(it - cumulative_.begin())].slice;
}

SliceBank extract_slices(const std::vector<LevelText>& levels, int height)
{
    SliceBank bank;
    for (const auto& level : levels) {
        const auto lines = split_lines(level.text);
        if (static_cast<int>(lines.size()) != height) {
            throw FormatError(level.name + ": expected " + std::to_string(height) + " lines, got "
                              + std::to_string(lines.size()));
        }
        const std::size_t width = lines.front().size();
        for (std::size_t r = 0; r < lines.size(); ++r) {
            if (lines[r].size() != width || width == 0) {
                throw FormatError(level.name + ": line " + std::to_string(r + 1) + " has "
                                  + std::to_string(lines[r].size()) + " columns, expected "
                                  + std::to_string(width));
            }
            for (std::size_t c = 0; c < width; ++c) {
                if (!in_alphabet(lines[r][c])) {
                    throw FormatError(level.name + ": line " + std::to_string(r + 1) + ": "
                                      + AlphabetError(lines[r][c], static_cast<int>(r), static_cast<int>(c)).what());
                }
            }
        }
        for (std::size_t c = 0; c < width; ++c) {
            std::string col(static_cast<std::size_t>(height), kEmpty);
            for (int r = 0; r < height; ++r) {
                col[static_cast<std::size_t>(r)] = lines[static_cast<std::size_t>(r)][c];
            }
            bank.add(Slice(std::move(col)));
        }
    }
    return bank;
}

CharMap parse_char_map(const std::string& text)
{
    CharMap map;
    int line_no = 0;
    for (const auto& raw : split_lines(text)) {
        ++line_no;
        std::string line = raw;
        // '#' is only a comment marker at the start; it is not a VGLC symbol either way.
        if (auto hash = line.find('#'); hash == 0) {
            continue;
        }
        line.erase(std::remove_if(line.begin(), line.end(), [](char ch) { return ch == ' ' || ch == '\t'; }),
                   line.end());
        if (line.empty()) {
            continue;
        }
        if (line.size() != 3 || line[1] != '=') {
            throw FormatError("char map line " + std::to_string(line_no) + ": expected 'src = dst'");
        }
        if (!in_alphabet(line[2])) {
            throw FormatError("char map line " + std::to_string(line_no) + ": target '" + std::string(1, line[2])
                              + "' is not a tile symbol");
        }
        map[line[0]] = line[2];
    }
    return map;
}

CharMap load_char_map(const std::filesystem::path& path) { return parse_char_map(read_file(path)); }

std::string apply_char_map(const std::string& text, const CharMap& map)
{
    std::string out = text;
    for (char& ch : out) {
        if (auto it = map.find(ch); it != map.end()) {
            ch = it->second;
        }
    }
    return out;
}

std::vector<LevelText> load_corpus_dir(const std::filesystem::path& dir, const std::optional<CharMap>& map)
{
    if (!std::filesystem::is_directory(dir)) {
        throw std::runtime_error("corpus directory not readable: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file()) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    std::vector<LevelText> levels;
    for (const auto& f : files) {
        std::string text = read_file(f);
        if (map) {
            text = apply_char_map(text, *map);
        }
        levels.push_back({f.filename().string(), std::move(text)});
    }
    return levels;
}

std::string serialize_bank(const SliceBank& bank)
{
    std::string out;
    for (const auto& e : bank.entries()) {
        out += std::to_string(e.count);
        out += '\t';
        out += e.slice.tiles();
        out += '\n';
    }
    return out;
}

SliceBank parse_bank(const std::string& text)
{
    SliceBank bank;
    int line_no = 0;
    for (const auto& line : split_lines(text)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw FormatError("bank line " + std::to_string(line_no) + ": missing tab");
        }
        long count = 0;
        try {
            count = std::stol(line.substr(0, tab));
        } catch (const std::exception&) {
            throw FormatError("bank line " + std::to_string(line_no) + ": bad count");
        }
        bank.add(Slice(line.substr(tab + 1)), count);
    }
    return bank;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace mechgen
