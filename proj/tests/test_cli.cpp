#include "support.hpp"

#include "mechgen/errors.hpp"
#include "mechgen/experiment.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mechgen;
using namespace testing_support;

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

ExperimentConfig tiny(Approach approach, const std::string& target, const fs::path& out)
{
    ExperimentConfig c;
    c.approach = approach;
    c.target = target;
    c.generations = 2;
    c.corpus_dir = corpus_dir();
    c.output_dir = out;
    c.search.population = 4;
    c.search.offspring = 4;
    c.search.cme_seeds = 4;
    c.node_budget = 100;
    return c;
}

} // namespace

TEST_CASE("config: parse, comments, overrides")
{
    const ExperimentConfig c = parse_config("# run\napproach = punishing\ntarget = coin  # trailing\n"
                                            "population=32\n\ncrossover_rate = 0.5\ngravity = 0.2\n");
    CHECK(c.approach == Approach::punishing);
    CHECK(c.target == "coin");
    CHECK(c.search.population == 32);
    CHECK(c.search.crossover_rate == 0.5);
    CHECK(c.physics.gravity == 0.2);
    CHECK_NOTHROW(c.validate());

    ExperimentConfig d = c;
    apply_overrides(d, {"seed=9", "workers=3"});
    CHECK(d.seed == 9);
    CHECK(d.search.workers == 3);
    CHECK_THROWS_AS(apply_overrides(d, {"seed"}), ConfigError);
}

TEST_CASE("config: errors")
{
    CHECK_THROWS_AS(parse_config("colour = blue\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("population = many\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("population = 3x\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("approach = magic\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("just words\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/run.cfg"), ConfigError);
}

TEST_CASE("config: validation of approach and target")
{
    ExperimentConfig c;
    CHECK_NOTHROW(c.validate());
    c.target = "coin";
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.approach = Approach::punishing;
    CHECK_NOTHROW(c.validate());
    c.target = "no-run";
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.approach = Approach::mechanics_dimensions;
    c.target = "coin";
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.target = "";
    CHECK_NOTHROW(c.validate());
    c.generations = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.generations = 1;
    c.budget_jitter = 1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("config: serialize round trip covers every key")
{
    ExperimentConfig c;
    c.approach = Approach::mechanics_dimensions;
    c.target = "";
    c.seed = 77;
    c.search.mutation_rate = 0.123456789;
    c.physics.run_max_speed = 0.31;
    c.char_map = "data/vglc_smb.map";
    const std::string text = serialize_config(c);
    for (const auto& k : config_keys()) {
        CHECK(text.find(k + " = ") != std::string::npos);
    }
    const ExperimentConfig back = parse_config(text);
    CHECK(serialize_config(back) == text);
    CHECK(back.search.mutation_rate == 0.123456789);
    CHECK(back.char_map == c.char_map);
}

TEST_CASE("run_experiment: FI2Pop run directory")
{
    const fs::path out = fs::temp_directory_path() / "mechgen_cli_fi2pop";
    fs::remove_all(out);
    const ExperimentConfig c = tiny(Approach::limited_agents, "limited-jump", out);
    int calls = 0;
    const RunResult r = run_experiment(c, [&](const GenerationStats&) { ++calls; });
    CHECK(calls == 2);
    CHECK(r.stats.size() == 2);
    REQUIRE(r.fi2pop.has_value());
    CHECK_FALSE(r.cme.has_value());
    const std::string csv = slurp(out / "stats.csv");
    CHECK(csv.rfind("generation,best_fitness,feasible_count,elite_count\n1,", 0) == 0);
    CHECK(parse_config(slurp(out / "config.cfg")).seed == c.seed);
    const auto n = static_cast<std::size_t>(std::distance(fs::directory_iterator(out / "feasible"), {}));
    CHECK(n == r.fi2pop->feasible.size());
    CHECK(fs::exists(out / "best.txt"));
    CHECK_NOTHROW(parse_scene(slurp(out / "best.txt")));

    // same seed, same bytes
    const fs::path again = fs::temp_directory_path() / "mechgen_cli_fi2pop_again";
    fs::remove_all(again);
    ExperimentConfig c2 = c;
    c2.output_dir = again;
    run_experiment(c2);
    CHECK(slurp(again / "stats.csv") == csv);
    CHECK(slurp(again / "best.txt") == slurp(out / "best.txt"));
    fs::remove_all(out);
    fs::remove_all(again);
}

TEST_CASE("run_experiment: CME run directory")
{
    const fs::path out = fs::temp_directory_path() / "mechgen_cli_cme";
    fs::remove_all(out);
    const RunResult r = run_experiment(tiny(Approach::mechanics_dimensions, "", out));
    REQUIRE(r.cme.has_value());
    const std::string map = slurp(out / "map" / "map.csv");
    CHECK(map.rfind("cell,bits,elite_fitness,infeasible_count,best_infeasible_constraint\n", 0) == 0);
    int elites = 0;
    for (const auto& [k, cell] : r.cme->cells) {
        if (cell.elite) {
            ++elites;
            char name[32];
            std::snprintf(name, sizeof name, "cell_%03d.txt", k);
            CHECK(fs::exists(out / "map" / name));
        }
    }
    CHECK(elites == r.cme->elite_count());
    fs::remove_all(out);
}

TEST_CASE("run_experiment: bad corpus")
{
    ExperimentConfig c = tiny(Approach::limited_agents, "no-run", fs::temp_directory_path() / "mechgen_cli_bad");
    c.corpus_dir = "/nonexistent/corpus";
    CHECK_THROWS(run_experiment(c));
}
