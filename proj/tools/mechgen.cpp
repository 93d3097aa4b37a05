// mechgen command-line front end.

#include "mechgen/experiment.hpp"
#include "mechgen/entropy.hpp"
#include "mechgen/errors.hpp"
#include "mechgen/tile.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace mechgen;

namespace {

constexpr int kExitError = 1;
constexpr int kExitLost = 2;

std::string_view describe(char c)
{
    switch (c) {
    case '-': return "empty";
    case 'X': return "ground";
    case 'S': return "brick (breaks when big)";
    case '?': return "coin block";
    case 'M': return "mushroom block";
    case 'o': return "coin";
    case '<': return "pipe top left";
    case '>': return "pipe top right";
    case '[': return "pipe body left";
    case ']': return "pipe body right";
    case 'g': return "goomba";
    case 'k': return "green koopa";
    case 'r': return "red koopa";
    case 'K': return "winged koopa";
    }
    return "?";
}

int cmd_extract(const std::string& corpus, const std::string& char_map, int height, const std::string& out)
{
    std::optional<CharMap> map;
    if (!char_map.empty()) {
        map = load_char_map(char_map);
    }
    const auto levels = load_corpus_dir(corpus, map);
    const SliceBank bank = extract_slices(levels, height);
    std::printf("levels %zu\ncolumns %ld\nunique %zu\n", levels.size(), bank.total(), bank.unique());
    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        f << serialize_bank(bank);
        if (!f) {
            throw std::runtime_error("cannot write " + out);
        }
    }
    return 0;
}

int cmd_generate(const std::string& config_path, const std::vector<std::string>& overrides, bool quiet)
{
    ExperimentConfig config = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
    apply_overrides(config, overrides);
    const RunResult r = run_experiment(config, [quiet](const GenerationStats& s) {
        if (!quiet) {
            std::fputs(stats_csv_row(s).c_str(), stderr);
        }
    });
    std::printf("run directory %s\n", r.dir.string().c_str());
    if (r.fi2pop) {
        std::printf("feasible %zu infeasible %zu\n", r.fi2pop->feasible.size(), r.fi2pop->infeasible.size());
    }
    if (r.cme) {
        std::printf("occupied cells %zu elites %d\n", r.cme->cells.size(), r.cme->elite_count());
    }
    return 0;
}

int cmd_render(const std::string& path, int height, int padding)
{
    const Scene scene = parse_scene(read_file(path), height, padding);
    std::string out = serialize_scene(scene);
    std::set<char> used;
    for (int c = 0; c < scene.width(); ++c) {
        for (int r = 0; r < scene.height(); ++r) {
            used.insert(scene.at(r, c));
        }
    }
    out += "\nlegend:\n";
    for (char c : kAlphabet) {
        if (used.contains(c)) {
            out += "  ";
            out += c;
            out += "  ";
            out += describe(c);
            out += "\n";
        }
    }
    const FitnessReport f = entropy_fitness(scene);
    char buf[128];
    std::snprintf(buf, sizeof buf, "size %dx%d  fitness %.6f\n", scene.height(), scene.width(), f.fitness);
    out += buf;
    std::fputs(out.c_str(), stdout);
    return 0;
}

struct ReplayOptions {
    std::string agent = "perfect";
    std::string punish;
    int node_budget = 800;
    int ticks_per_column = 10;
    double budget_jitter = 0.0;
    std::uint64_t seed = 0;
};

int cmd_replay(const std::string& path, int height, int padding, const ReplayOptions& o)
{
    const Scene scene = parse_scene(read_file(path), height, padding);
    const std::string& agent = o.agent;
    const std::string& punish = o.punish;
    const int node_budget = jittered_budget(o.node_budget, o.budget_jitter, o.seed);
    const int ticks_per_column = o.ticks_per_column;
    const auto kind = parse_agent(agent);
    if (!kind) {
        throw std::invalid_argument("unknown agent '" + agent + "'");
    }
    AgentConfig perfect = make_perfect({}, node_budget);
    AgentConfig config = *kind == AgentKind::perfect ? perfect : make_limited(*kind, perfect);
    ModelPtr world = make_base_model();
    if (!punish.empty()) {
        config.planning_model = wrap_punishing(config.planning_model, punish);
        world = wrap_punishing(world, punish);
    }
    const Playthrough p = play(scene, config, ticks_per_column * scene.width(), *world);
    std::fputs(serialize_trace(p).c_str(), stdout);
    return p.won ? 0 : kExitLost;
}

int cmd_stats(const std::string& path)
{
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || line + "\n" != stats_csv_header()) {
        throw FormatError(path + ": not a stats CSV (header mismatch)");
    }
    int rows = 0;
    int first_feasible = -1;
    int max_elites = 0;
    bool monotone = true;
    int last_elites = 0;
    std::string last_best;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            f.push_back(cell);
        }
        if (line.back() == ',') {
            f.emplace_back();
        }
        if (f.size() != 4) {
            throw FormatError(path + ": row " + std::to_string(rows + 1) + " does not have 4 fields");
        }
        const int gen = std::stoi(f[0]);
        const int elites = std::stoi(f[3]);
        if (!f[1].empty() && first_feasible < 0) {
            first_feasible = gen;
        }
        if (rows > 0 && elites < last_elites) {
            monotone = false;
        }
        last_elites = elites;
        max_elites = std::max(max_elites, elites);
        last_best = f[1];
        ++rows;
    }
    std::printf("rows %d\n", rows);
    std::printf("first_feasible_generation %s\n", first_feasible < 0 ? "none" : std::to_string(first_feasible).c_str());
    std::printf("final_best_fitness %s\n", last_best.empty() ? "none" : last_best.c_str());
    std::printf("max_elite_count %d\n", max_elites);
    std::printf("elite_count_nondecreasing %s\n", monotone ? "yes" : "no");
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mechgen: evolve platformer scenes around game mechanics"};
    app.require_subcommand(1);

    std::string corpus = "data/corpus";
    std::string char_map;
    std::string bank_out;
    int height = 14;
    auto* extract = app.add_subcommand("extract-corpus", "slice a corpus directory and report counts");
    extract->add_option("--corpus", corpus, "directory of level files")->capture_default_str();
    extract->add_option("--char-map", char_map, "symbol mapping file (src = dst lines)");
    extract->add_option("--height", height, "level height")->capture_default_str();
    extract->add_option("--out", bank_out, "write the slice bank (count<TAB>column)");

    std::string config_path;
    std::vector<std::string> overrides;
    int workers = 0;
    int seed = -1;
    std::string output;
    bool quiet = false;
    auto* generate = app.add_subcommand("generate", "run an experiment");
    generate->add_option("--config", config_path, "key = value config file");
    generate->add_option("--set", overrides, "override, key=value (repeatable)");
    generate->add_option("--workers", workers, "parallel evaluations");
    generate->add_option("--seed", seed, "random seed");
    generate->add_option("--output", output, "run directory");
    generate->add_flag("--quiet", quiet, "no per-generation progress on stderr");

    std::string scene_path;
    int padding = 3;
    int scene_height = 14;
    auto* render = app.add_subcommand("render", "print a scene with a legend");
    render->add_option("scene", scene_path, "scene file")->required();
    render->add_option("--height", scene_height, "rows per scene")->capture_default_str();
    render->add_option("--padding", padding, "padding columns per side")->capture_default_str();

    ReplayOptions ro;
    auto* replay = app.add_subcommand("replay", "play a scene and print the trace (exit 0 win, 2 loss)");
    replay->add_option("scene", scene_path, "scene file")->required();
    replay->add_option("--agent", ro.agent, "perfect, no-run, limited-jump or enemy-blind")->capture_default_str();
    replay->add_option("--punish", ro.punish,
                       "play under a punishing model (high-jump, speed, stomp, shell-kill, mushroom, coin)");
    replay->add_option("--node-budget", ro.node_budget, "expansions per planning call")->capture_default_str();
    replay->add_option("--ticks-per-column", ro.ticks_per_column, "tick budget per scene column")->capture_default_str();
    replay->add_option("--budget-jitter", ro.budget_jitter, "perturb the node budget by this fraction")->capture_default_str();
    replay->add_option("--seed", ro.seed, "seed for the budget perturbation")->capture_default_str();
    replay->add_option("--height", scene_height, "rows per scene")->capture_default_str();
    replay->add_option("--padding", padding, "padding columns per side")->capture_default_str();

    std::string stats_path;
    auto* stats = app.add_subcommand("stats", "summarize a stats.csv");
    stats->add_option("csv", stats_path, "stats file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitError;
    }

    try {
        if (*extract) {
            return cmd_extract(corpus, char_map, height, bank_out);
        }
        if (*generate) {
            if (workers > 0) {
                overrides.push_back("workers=" + std::to_string(workers));
            }
            if (seed >= 0) {
                overrides.push_back("seed=" + std::to_string(seed));
            }
            if (!output.empty()) {
                overrides.push_back("output_dir=" + output);
            }
            return cmd_generate(config_path, overrides, quiet);
        }
        if (*render) {
            return cmd_render(scene_path, scene_height, padding);
        }
        if (*replay) {
            return cmd_replay(scene_path, scene_height, padding, ro);
        }
        if (*stats) {
            return cmd_stats(stats_path);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }
    return kExitError;
}
