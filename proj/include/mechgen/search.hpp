#pragma once

#include "mechgen/corpus.hpp"
#include "mechgen/evaluators.hpp"
#include "mechgen/scene.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mechgen {

/// What one evaluation of a scene reports back to the search.
struct Evaluation {
    double constraint = 0.0; ///< raw constraint value
    double rank = 0.0;       ///< constraint on a [0, 1] scale, used to order infeasibles
    double fitness = 0.0;    ///< entropy fitness of the phenotype
    std::optional<DimensionVector> dims;
};

/// Scores scenes. Implementations must be safe to call from several threads at once and,
/// unless stochastic() is true, must return the same result for the same scene.
class SceneEvaluator {
public:
    virtual ~SceneEvaluator() = default;
    /// `seed` only matters for stochastic evaluators.
    virtual Evaluation evaluate(const Scene& scene, std::uint64_t seed) const = 0;
    virtual bool stochastic() const { return false; }
};

/// Node budget drawn uniformly from [budget * (1 - jitter), budget * (1 + jitter)] by `seed`;
/// jitter 0 returns `budget`.
int jittered_budget(int budget, double jitter, std::uint64_t seed);

enum class Approach { limited_agents, punishing, mechanics_dimensions };

std::string_view approach_name(Approach a);
std::optional<Approach> parse_approach(std::string_view name);

/// The three agent-driven evaluators.
class AgentEvaluator final : public SceneEvaluator {
public:
    struct Settings {
        Approach approach = Approach::mechanics_dimensions;
        AgentKind limited = AgentKind::limited_jump;      ///< limited-agents only
        PunishedMechanic punished = PunishedMechanic::coin; ///< punishing only
        AgentConfig perfect = make_perfect();
        int ticks_per_column = 10;
        /// 0 keeps the node budget fixed; s > 0 draws it per evaluation from
        /// [budget * (1 - s), budget * (1 + s)].
        double budget_jitter = 0.0;
    };

    explicit AgentEvaluator(Settings settings);

    Evaluation evaluate(const Scene& scene, std::uint64_t seed) const override;
    bool stochastic() const override { return settings_.budget_jitter > 0.0; }

    /// Full report, for inspection tools.
    ConstraintReport report(const Scene& scene, std::uint64_t seed) const;
    const Settings& settings() const { return settings_; }

private:
    Settings settings_;
};

struct Chromosome {
    std::vector<Slice> core;
    double constraint = std::numeric_limits<double>::infinity(); ///< lowest value seen
    double rank = 0.0;
    bool satisfied = false;
    double fitness = 0.0;
    std::optional<DimensionVector> dims;
    int eval_count = 0;

    Scene phenotype(const SceneShape& shape) const { return Scene::from_core(core, shape); }
};

/// Keeps the lowest constraint seen so far; rank, fitness and dims follow that evaluation.
void record(Chromosome& c, const Evaluation& e);

Chromosome random_chromosome(const SliceBank& bank, int core_width, Rng& rng);

/// Swaps the slice range [i, j) between the two genotypes. Children come back unevaluated.
std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& a, const Chromosome& b, int i, int j);
/// (i, j) uniform over all pairs 0 <= i <= j <= core width.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b, Rng& rng);

Chromosome mutate_at(const Chromosome& c, int position, const Slice& replacement);
/// One uniformly chosen position gets a bank sample. Throws std::logic_error on an empty bank.
Chromosome mutate(const Chromosome& c, const SliceBank& bank, Rng& rng);

struct SearchParams {
    SceneShape shape;
    int population = 100;   ///< FI2Pop population, also its offspring per generation
    int offspring = 100;    ///< CME children per iteration
    int cme_seeds = 100;    ///< random chromosomes placed before the first CME iteration
    int cell_infeasible_cap = 20;
    double crossover_rate = 0.7;
    double mutation_rate = 0.3;
    int workers = 1;

    void validate() const; ///< throws ConfigError
};

/// Evaluates every chromosome (at most `workers` at a time), then records the results in
/// index order. Chromosome i gets seed derived from (batch_seed, i).
void evaluate_all(std::vector<Chromosome>& batch, const SceneEvaluator& evaluator, const SearchParams& params,
                  std::uint64_t batch_seed);

std::uint64_t derive_seed(std::uint64_t batch_seed, std::uint64_t index);

struct GenerationStats {
    int generation = 0;
    std::optional<double> best_fitness; ///< empty when nothing is feasible
    int feasible_count = 0;
    int elite_count = 0;
};

std::string stats_csv_header();
std::string stats_csv_row(const GenerationStats& s);

// ---- FI2Pop ----

struct FI2PopState {
    std::vector<Chromosome> feasible;   ///< fitness descending
    std::vector<Chromosome> infeasible; ///< rank descending
    int generation = 0;

    /// Best feasible, else best infeasible; nullptr when empty.
    const Chromosome* elite() const;
};

FI2PopState fi2pop_init(const SceneEvaluator& evaluator, const SliceBank& bank, const SearchParams& params, Rng& rng);
FI2PopState fi2pop_generation(const FI2PopState& state, const SceneEvaluator& evaluator, const SliceBank& bank,
                              const SearchParams& params, Rng& rng);
/// feasible_count = |feasible|; elite_count is 1 when the elite is feasible.
GenerationStats fi2pop_stats(const FI2PopState& state);

// ---- Constrained MAP-Elites ----

struct Cell {
    std::optional<Chromosome> elite;
    std::vector<Chromosome> infeasible; ///< rank descending
};

struct CMEState {
    std::map<int, Cell> cells;
    int iteration = 0;
    int last_feasible_children = 0;

    int elite_count() const;
};

/// Feasible: replaces the elite only on strictly higher fitness. Infeasible: joins the
/// cell's repair population, which keeps its best `cap` by rank.
void place(CMEState& state, Chromosome child, int cap);

CMEState cme_init(const SceneEvaluator& evaluator, const SliceBank& bank, const SearchParams& params, Rng& rng);
CMEState cme_iteration(const CMEState& state, const SceneEvaluator& evaluator, const SliceBank& bank,
                       const SearchParams& params, Rng& rng);
/// feasible_count counts feasible children of the last iteration.
GenerationStats cme_stats(const CMEState& state);

} // namespace mechgen
