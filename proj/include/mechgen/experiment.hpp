#pragma once

#include "mechgen/search.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mechgen {

/// Everything a run needs. Text form is `key = value` lines; see config_keys().
struct ExperimentConfig {
    Approach approach = Approach::limited_agents;
    std::string target = "limited-jump"; ///< limitation or punished mechanic; empty for mechanics-dimensions
    int generations = 1000;              ///< FI2Pop generations or CME iterations
    int seed = 1;
    std::filesystem::path corpus_dir = "data/corpus";
    std::filesystem::path char_map;      ///< optional
    std::filesystem::path output_dir = "runs/default";

    SearchParams search;
    PhysicsParams physics;
    int node_budget = 800;
    int ticks_per_column = 10;
    double budget_jitter = 0.0;

    /// Throws ConfigError for incompatible approach/target pairs or non-positive numbers.
    void validate() const;
};

/// Known keys, in the order they are written back.
std::vector<std::string> config_keys();

/// Sets one key from its text value. Throws ConfigError on unknown keys or bad values.
void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Parses `key = value` lines onto `base`; '#' starts a comment. Does not validate.
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {});

/// Applies "key=value" overrides in order.
void apply_overrides(ExperimentConfig& config, const std::vector<std::string>& overrides);

/// Every key, one per line; parsing it back gives an equal run.
std::string serialize_config(const ExperimentConfig& config);

ExperimentConfig load_config(const std::filesystem::path& path);

/// Loads the corpus named by the config; throws when it is unreadable or empty.
SliceBank load_bank(const ExperimentConfig& config);

std::unique_ptr<AgentEvaluator> make_evaluator(const ExperimentConfig& config);

struct RunResult {
    std::filesystem::path dir;
    std::vector<GenerationStats> stats;
    std::optional<FI2PopState> fi2pop; ///< limited-agents and punishing runs
    std::optional<CMEState> cme;       ///< mechanics-dimensions runs
};

/// Runs the configured search and writes into output_dir:
///   config.cfg   the full config
///   stats.csv    one row per generation/iteration
///   best.txt     best scene (FI2Pop: the elite; CME: highest-fitness elite), when one exists
///   feasible/    FI2Pop: every final feasible scene, best first
///   map/         CME: cell_NNN.txt per elite, plus map.csv
RunResult run_experiment(const ExperimentConfig& config,
                         const std::function<void(const GenerationStats&)>& on_generation = {});

} // namespace mechgen
