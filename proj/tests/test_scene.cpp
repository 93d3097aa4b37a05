#include "support.hpp"

#include "mechgen/entropy.hpp"
#include "mechgen/errors.hpp"
#include "mechgen/tile.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

using namespace mechgen;
using namespace testing_support;

namespace {

std::string rows_text(const std::vector<std::string>& rows)
{
    std::string t;
    for (const auto& r : rows) {
        t += r + "\n";
    }
    return t;
}

std::string uniform_text(int h, int w, char c)
{
    return rows_text(std::vector<std::string>(static_cast<std::size_t>(h), std::string(static_cast<std::size_t>(w), c)));
}

// Exact integer counts, entropy in bits from the exact fractions.
FitnessReport oracle(const Scene& s)
{
    std::map<char, long> freq;
    long changed = 0;
    long pairs = 0;
    for (int r = 0; r < s.height(); ++r) {
        for (int c = 0; c < s.width(); ++c) {
            ++freq[s.at(r, c)];
            if (c + 1 < s.width()) {
                ++pairs;
                changed += s.at(r, c) != s.at(r, c + 1);
            }
        }
    }
    const long n = static_cast<long>(s.width()) * s.height();
    auto bits = [](long num, long den) {
        const long double p = static_cast<long double>(num) / static_cast<long double>(den);
        return p == 0 ? 0.0L : -p * std::log2(p);
    };
    FitnessReport out;
    if (freq.size() > 1) {
        long double h = 0;
        for (auto& [sym, cnt] : freq) {
            h += bits(cnt, n);
        }
        out.tile_entropy = static_cast<double>(h / std::log2(static_cast<long double>(freq.size())));
    }
    out.change_entropy = static_cast<double>(bits(changed, pairs) + bits(pairs - changed, pairs));
    out.fitness = 0.2 * (1 - out.tile_entropy) + 0.8 * (1 - out.change_entropy);
    return out;
}

Scene random_scene(std::mt19937_64& rng)
{
    // Random sub-alphabet so the number of distinct symbols varies.
    std::string alphabet(kAlphabet);
    std::shuffle(alphabet.begin(), alphabet.end(), rng);
    const auto k = std::uniform_int_distribution<std::size_t>(1, alphabet.size())(rng);
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    std::vector<std::string> rows(14, std::string(20, '-'));
    for (auto& row : rows) {
        for (auto& ch : row) {
            ch = alphabet[pick(rng)];
        }
    }
    return parse_scene(rows_text(rows));
}

} // namespace

TEST_CASE("tile alphabet: every symbol has one category, outsiders have none")
{
    for (char c : kAlphabet) {
        CHECK(category_of(c).has_value());
    }
    for (char c : std::string("@#. xZ0U\t")) {
        CHECK_FALSE(category_of(c).has_value());
    }
    CHECK(category_of('g') == TileCategory::enemy_spawn);
    CHECK(category_of('M') == TileCategory::question_block);
    CHECK(is_solid_symbol('['));
    CHECK_FALSE(is_solid_symbol('o'));
}

TEST_CASE("parse_scene: structure of a valid 14x20 scene")
{
    const Scene s = parse_scene(uniform_text(14, 20, '-'));
    CHECK(s.width() == 20);
    CHECK(s.height() == 14);
    CHECK(s.core_width() == 14);
    CHECK(s.padding() == 3);
}

TEST_CASE("parse_scene: unknown symbol reports symbol and position")
{
    std::vector<std::string> rows(14, std::string(20, '-'));
    rows[4][7] = '@';
    try {
        parse_scene(rows_text(rows));
        FAIL("expected AlphabetError");
    } catch (const AlphabetError& e) {
        CHECK(e.symbol() == '@');
        CHECK(e.row() == 4);
        CHECK(e.col() == 7);
        CHECK(std::string(e.what()).find('@') != std::string::npos);
    }
}

TEST_CASE("parse_scene: format errors")
{
    CHECK_THROWS_AS(parse_scene(uniform_text(13, 20, '-')), FormatError);
    CHECK_THROWS_AS(parse_scene(uniform_text(15, 20, '-')), FormatError);
    std::vector<std::string> rows(14, std::string(20, '-'));
    rows[9] = std::string(19, '-');
    CHECK_THROWS_AS(parse_scene(rows_text(rows)), FormatError);
    // narrower than 2P + 1
    CHECK_THROWS_AS(parse_scene(uniform_text(14, 6, '-')), FormatError);
    CHECK_NOTHROW(parse_scene(uniform_text(14, 7, '-')));
    CHECK_THROWS_AS(parse_scene(""), FormatError);
}

TEST_CASE("serialize_scene: round trips and direct mapping")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const Scene s = random_scene(rng);
        const std::string t = serialize_scene(s);
        CHECK(serialize_scene(parse_scene(t)) == t);
        CHECK(parse_scene(t) == s);
    }
    const Scene flat = flat_scene();
    const auto lines = split_lines(serialize_scene(flat));
    REQUIRE(lines.size() == 14);
    CHECK(lines[0] == std::string(20, '-'));
    CHECK(lines[12] == std::string(20, 'X'));
    CHECK(lines[13] == std::string(20, 'X'));

    std::vector<std::string> rows(14, std::string(20, '-'));
    rows[5][7] = 'o';
    CHECK(split_lines(serialize_scene(parse_scene(rows_text(rows))))[5][7] == 'o');
}

TEST_CASE("parse_scene accepts CRLF and a missing final newline")
{
    std::string t = uniform_text(14, 20, '-');
    t.pop_back();
    CHECK(parse_scene(t).width() == 20);
    std::string crlf;
    for (char c : uniform_text(14, 20, '-')) {
        if (c == '\n') {
            crlf += '\r';
        }
        crlf += c;
    }
    CHECK(parse_scene(crlf).width() == 20);
}

TEST_CASE("from_core wraps the genotype in floor padding")
{
    std::vector<Slice> core(14, Slice(pit()));
    const Scene s = Scene::from_core(core, {});
    CHECK(s.width() == 20);
    for (int c : {0, 1, 2, 17, 18, 19}) {
        CHECK(s.column(c) == Slice(ground()));
    }
    CHECK(s.core() == core);
    CHECK_THROWS_AS(Scene::from_core(std::vector<Slice>(13, Slice(pit())), {}), FormatError);
}

TEST_CASE("entropy: single symbol scene")
{
    const FitnessReport r = entropy_fitness(parse_scene(uniform_text(14, 20, '-')));
    CHECK(r.tile_entropy == 0.0);
    CHECK(r.change_entropy == 0.0);
    CHECK(r.fitness == 1.0);
}

TEST_CASE("entropy: alternating stripes")
{
    std::vector<std::string> rows(14, std::string(20, '-'));
    for (auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); c += 2) {
            row[c] = 'X';
        }
    }
    const FitnessReport r = entropy_fitness(parse_scene(rows_text(rows)));
    CHECK(r.tile_entropy == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.change_entropy == 0.0);
    CHECK(r.fitness == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("entropy: half and half")
{
    std::vector<std::string> rows(14, std::string(10, '-') + std::string(10, 'X'));
    const FitnessReport r = entropy_fitness(parse_scene(rows_text(rows)));
    const double p = 1.0 / 19.0;
    const double hb = -(p * std::log2(p) + (1 - p) * std::log2(1 - p));
    CHECK(r.tile_entropy == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.change_entropy == doctest::Approx(hb).epsilon(1e-12));
    CHECK(r.fitness == doctest::Approx(0.8 * (1 - hb)).epsilon(1e-12));
    CHECK(r.fitness == doctest::Approx(0.56202).epsilon(1e-4));
}

TEST_CASE("entropy: agrees with the exact-count oracle on 1000 random scenes")
{
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const Scene s = random_scene(rng);
        const FitnessReport a = entropy_fitness(s);
        const FitnessReport b = oracle(s);
        REQUIRE(std::abs(a.tile_entropy - b.tile_entropy) <= 1e-9);
        REQUIRE(std::abs(a.change_entropy - b.change_entropy) <= 1e-9);
        REQUIRE(std::abs(a.fitness - b.fitness) <= 1e-9);
        REQUIRE(a.fitness >= 0.0);
        REQUIRE(a.fitness <= 1.0 + 1e-12);
        REQUIRE(a.tile_entropy >= 0.0);
        REQUIRE(a.tile_entropy <= 1.0 + 1e-12);
        REQUIRE(a.change_entropy >= 0.0);
        REQUIRE(a.change_entropy <= 1.0 + 1e-12);
    }
}

TEST_CASE("entropy: invariant under mirroring and relabeling")
{
    std::mt19937_64 rng(77);
    std::string perm(kAlphabet);
    for (int i = 0; i < 200; ++i) {
        const Scene s = random_scene(rng);
        std::vector<Slice> cols = s.columns();
        std::reverse(cols.begin(), cols.end());
        const Scene mirrored = Scene::from_columns(cols, s.padding());

        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Slice> relabeled;
        for (const auto& col : s.columns()) {
            std::string t = col.tiles();
            for (auto& ch : t) {
                ch = perm[kAlphabet.find(ch)];
            }
            relabeled.emplace_back(t);
        }
        const Scene renamed = Scene::from_columns(relabeled, s.padding());

        const FitnessReport a = entropy_fitness(s);
        const FitnessReport m = entropy_fitness(mirrored);
        const FitnessReport r = entropy_fitness(renamed);
        CHECK(m.fitness == doctest::Approx(a.fitness).epsilon(1e-12));
        CHECK(r.fitness == doctest::Approx(a.fitness).epsilon(1e-12));
        CHECK(r.tile_entropy == doctest::Approx(a.tile_entropy).epsilon(1e-12));
    }
}
