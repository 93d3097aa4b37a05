#include "mechgen/experiment.hpp"

#include "mechgen/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace mechgen {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

int to_int(const std::string& key, const std::string& v)
{
    int out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) {
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    }
    return out;
}

double to_double(const std::string& key, const std::string& v)
{
    try {
        std::size_t used = 0;
        const double out = std::stod(v, &used);
        if (used == v.size()) {
            return out;
        }
    } catch (const std::exception&) {
    }
    throw ConfigError(key + ": expected a number, got '" + v + "'");
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Key {
    std::string name;
    std::function<void(ExperimentConfig&, const std::string&)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

Key int_key(std::string name, int ExperimentConfig::*field)
{
    return {name, [name, field](ExperimentConfig& c, const std::string& v) { c.*field = to_int(name, v); },
            [field](const ExperimentConfig& c) { return std::to_string(c.*field); }};
}

Key search_int(std::string name, int SearchParams::*field)
{
    return {name, [name, field](ExperimentConfig& c, const std::string& v) { c.search.*field = to_int(name, v); },
            [field](const ExperimentConfig& c) { return std::to_string(c.search.*field); }};
}

Key search_real(std::string name, double SearchParams::*field)
{
    return {name, [name, field](ExperimentConfig& c, const std::string& v) { c.search.*field = to_double(name, v); },
            [field](const ExperimentConfig& c) { return fmt(c.search.*field); }};
}

Key shape_int(std::string name, int SceneShape::*field)
{
    return {name,
            [name, field](ExperimentConfig& c, const std::string& v) { c.search.shape.*field = to_int(name, v); },
            [field](const ExperimentConfig& c) { return std::to_string(c.search.shape.*field); }};
}

Key physics_real(std::string name, double PhysicsParams::*field)
{
    return {name, [name, field](ExperimentConfig& c, const std::string& v) { c.physics.*field = to_double(name, v); },
            [field](const ExperimentConfig& c) { return fmt(c.physics.*field); }};
}

Key path_key(std::string name, fs::path ExperimentConfig::*field)
{
    return {name, [field](ExperimentConfig& c, const std::string& v) { c.*field = v; },
            [field](const ExperimentConfig& c) { return (c.*field).string(); }};
}

const std::vector<Key>& keys()
{
    static const std::vector<Key> table = {
        {"approach",
         [](ExperimentConfig& c, const std::string& v) {
             auto a = parse_approach(v);
             if (!a) {
                 throw ConfigError("approach: expected limited-agents, punishing or mechanics-dimensions, got '" + v
                                   + "'");
             }
             c.approach = *a;
         },
         [](const ExperimentConfig& c) { return std::string(approach_name(c.approach)); }},
        {"target", [](ExperimentConfig& c, const std::string& v) { c.target = v; },
         [](const ExperimentConfig& c) { return c.target; }},
        int_key("generations", &ExperimentConfig::generations),
        int_key("seed", &ExperimentConfig::seed),
        path_key("corpus_dir", &ExperimentConfig::corpus_dir),
        path_key("char_map", &ExperimentConfig::char_map),
        path_key("output_dir", &ExperimentConfig::output_dir),
        search_int("population", &SearchParams::population),
        search_int("offspring", &SearchParams::offspring),
        search_int("cme_seeds", &SearchParams::cme_seeds),
        search_int("cell_infeasible_cap", &SearchParams::cell_infeasible_cap),
        search_real("crossover_rate", &SearchParams::crossover_rate),
        search_real("mutation_rate", &SearchParams::mutation_rate),
        search_int("workers", &SearchParams::workers),
        shape_int("scene_height", &SceneShape::height),
        shape_int("core_width", &SceneShape::core_width),
        shape_int("padding", &SceneShape::padding),
        int_key("node_budget", &ExperimentConfig::node_budget),
        int_key("ticks_per_column", &ExperimentConfig::ticks_per_column),
        {"budget_jitter",
         [](ExperimentConfig& c, const std::string& v) { c.budget_jitter = to_double("budget_jitter", v); },
         [](const ExperimentConfig& c) { return fmt(c.budget_jitter); }},
        physics_real("high_jump_apex", &PhysicsParams::high_jump_apex),
        physics_real("long_jump_distance", &PhysicsParams::long_jump_distance),
        physics_real("gravity", &PhysicsParams::gravity),
        physics_real("jump_impulse", &PhysicsParams::jump_impulse),
        physics_real("walk_max_speed", &PhysicsParams::walk_max_speed),
        physics_real("run_max_speed", &PhysicsParams::run_max_speed),
    };
    return table;
}

const Key& find_key(const std::string& name)
{
    for (const auto& k : keys()) {
        if (k.name == name) {
            return k;
        }
    }
    throw ConfigError("unknown config key '" + name + "'");
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

std::string three_digits(int i)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%03d", i);
    return buf;
}

} // namespace

std::vector<std::string> config_keys()
{
    std::vector<std::string> out;
    for (const auto& k : keys()) {
        out.push_back(k.name);
    }
    return out;
}

void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value)
{
    find_key(key).set(config, value);
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig base)
{
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        set_config_value(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

void apply_overrides(ExperimentConfig& config, const std::vector<std::string>& overrides)
{
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("override '" + o + "' is not key=value");
        }
        set_config_value(config, trim(o.substr(0, eq)), trim(o.substr(eq + 1)));
    }
}

std::string serialize_config(const ExperimentConfig& config)
{
    std::string out;
    for (const auto& k : keys()) {
        out += k.name + " = " + k.get(config) + "\n";
    }
    return out;
}

ExperimentConfig load_config(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void ExperimentConfig::validate() const
{
    switch (approach) {
    case Approach::limited_agents: {
        const auto k = parse_agent(target);
        if (!k || *k == AgentKind::perfect) {
            throw ConfigError("limited-agents target must be no-run, limited-jump or enemy-blind, got '" + target + "'");
        }
        break;
    }
    case Approach::punishing:
        if (!parse_punished(target)) {
            throw ConfigError(
                "punishing target must be high-jump, speed, stomp, shell-kill, mushroom or coin, got '" + target + "'");
        }
        break;
    case Approach::mechanics_dimensions:
        if (!target.empty()) {
            throw ConfigError("mechanics-dimensions takes no target, got '" + target + "'");
        }
        break;
    }
    if (generations < 1 || node_budget < 1 || ticks_per_column < 1) {
        throw ConfigError("generations, node_budget and ticks_per_column must be positive");
    }
    if (seed < 0) {
        throw ConfigError("seed must be non-negative");
    }
    if (!(budget_jitter >= 0.0 && budget_jitter < 1.0)) {
        throw ConfigError("budget_jitter must lie in [0, 1)");
    }
    if (output_dir.empty()) {
        throw ConfigError("output_dir is empty");
    }
    search.validate();
}

SliceBank load_bank(const ExperimentConfig& config)
{
    std::optional<CharMap> map;
    if (!config.char_map.empty()) {
        map = load_char_map(config.char_map);
    }
    SliceBank bank = extract_slices(load_corpus_dir(config.corpus_dir, map), config.search.shape.height);
    if (bank.empty()) {
        throw std::runtime_error("corpus " + config.corpus_dir.string() + " holds no slices");
    }
    return bank;
}

std::unique_ptr<AgentEvaluator> make_evaluator(const ExperimentConfig& config)
{
    AgentEvaluator::Settings s;
    s.approach = config.approach;
    if (config.approach == Approach::limited_agents) {
        s.limited = *parse_agent(config.target);
    } else if (config.approach == Approach::punishing) {
        s.punished = *parse_punished(config.target);
    }
    s.perfect = make_perfect(config.physics, config.node_budget);
    s.ticks_per_column = config.ticks_per_column;
    s.budget_jitter = config.budget_jitter;
    return std::make_unique<AgentEvaluator>(std::move(s));
}

RunResult run_experiment(const ExperimentConfig& config, const std::function<void(const GenerationStats&)>& on_generation)
{
    config.validate();
    const SliceBank bank = load_bank(config);
    const auto evaluator = make_evaluator(config);
    const SceneShape& shape = config.search.shape;

    RunResult result;
    result.dir = config.output_dir;
    fs::create_directories(result.dir);
    fs::remove(result.dir / "best.txt");
    write_file(result.dir / "config.cfg", serialize_config(config));

    std::string csv = stats_csv_header();
    auto note = [&](const GenerationStats& s) {
        result.stats.push_back(s);
        csv += stats_csv_row(s);
        if (on_generation) {
            on_generation(s);
        }
    };

    Rng rng(static_cast<std::uint64_t>(config.seed));
    if (config.approach == Approach::mechanics_dimensions) {
        CMEState state = cme_init(*evaluator, bank, config.search, rng);
        for (int i = 0; i < config.generations; ++i) {
            state = cme_iteration(state, *evaluator, bank, config.search, rng);
            note(cme_stats(state));
        }
        const fs::path map_dir = result.dir / "map";
        fs::remove_all(map_dir);
        fs::create_directories(map_dir);
        std::string map_csv = "cell,bits,elite_fitness,infeasible_count,best_infeasible_constraint\n";
        const Chromosome* best = nullptr;
        for (const auto& [index, cell] : state.cells) {
            std::string bits;
            const DimensionVector dv = DimensionVector::from_cell(index);
            for (bool b : dv.bits) {
                bits += b ? '1' : '0';
            }
            map_csv += std::to_string(index) + "," + bits + ",";
            if (cell.elite) {
                map_csv += fmt(cell.elite->fitness);
                write_file(map_dir / ("cell_" + three_digits(index) + ".txt"),
                           serialize_scene(cell.elite->phenotype(shape)));
                if (!best || cell.elite->fitness > best->fitness) {
                    best = &*cell.elite;
                }
            }
            map_csv += "," + std::to_string(cell.infeasible.size()) + ",";
            if (!cell.infeasible.empty()) {
                map_csv += fmt(cell.infeasible.front().constraint);
            }
            map_csv += "\n";
        }
        write_file(map_dir / "map.csv", map_csv);
        if (best) {
            write_file(result.dir / "best.txt", serialize_scene(best->phenotype(shape)));
        }
        result.cme = std::move(state);
    } else {
        FI2PopState state = fi2pop_init(*evaluator, bank, config.search, rng);
        for (int g = 0; g < config.generations; ++g) {
            state = fi2pop_generation(state, *evaluator, bank, config.search, rng);
            note(fi2pop_stats(state));
        }
        if (const Chromosome* elite = state.elite()) {
            write_file(result.dir / "best.txt", serialize_scene(elite->phenotype(shape)));
        }
        const fs::path feas_dir = result.dir / "feasible";
        fs::remove_all(feas_dir);
        fs::create_directories(feas_dir);
        for (std::size_t i = 0; i < state.feasible.size(); ++i) {
            write_file(feas_dir / (three_digits(static_cast<int>(i)) + ".txt"),
                       serialize_scene(state.feasible[i].phenotype(shape)));
        }
        result.fi2pop = std::move(state);
    }
    write_file(result.dir / "stats.csv", csv);
    return result;
}

} // namespace mechgen
