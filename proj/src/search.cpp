#include "mechgen/search.hpp"

#include "mechgen/entropy.hpp"
#include "mechgen/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

namespace mechgen {

std::string_view approach_name(Approach a)
{
    switch (a) {
    case Approach::limited_agents: return "limited-agents";
    case Approach::punishing: return "punishing";
    case Approach::mechanics_dimensions: return "mechanics-dimensions";
    }
    return "?";
}

std::optional<Approach> parse_approach(std::string_view name)
{
    for (auto a : {Approach::limited_agents, Approach::punishing, Approach::mechanics_dimensions}) {
        if (approach_name(a) == name) {
            return a;
        }
    }
    return std::nullopt;
}

int jittered_budget(int budget, double jitter, std::uint64_t seed)
{
    if (jitter <= 0.0) {
        return budget;
    }
    const int lo = std::max(1, static_cast<int>(std::floor(budget * (1.0 - jitter))));
    const int hi = std::max(lo, static_cast<int>(std::ceil(budget * (1.0 + jitter))));
    Rng rng(seed);
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

AgentEvaluator::AgentEvaluator(Settings settings) : settings_(std::move(settings))
{
    settings_.perfect.validate();
    if (settings_.ticks_per_column < 1) {
        throw ConfigError("ticks per column must be at least 1");
    }
    if (!(settings_.budget_jitter >= 0.0 && settings_.budget_jitter < 1.0)) {
        throw ConfigError("budget jitter must lie in [0, 1)");
    }
    if (settings_.approach == Approach::limited_agents && settings_.limited == AgentKind::perfect) {
        throw ConfigError("the limited agent cannot be the perfect agent");
    }
}

ConstraintReport AgentEvaluator::report(const Scene& scene, std::uint64_t seed) const
{
    AgentConfig perfect = settings_.perfect;
    perfect.node_budget = jittered_budget(perfect.node_budget, settings_.budget_jitter, seed);
    const int ticks = settings_.ticks_per_column * scene.width();
    switch (settings_.approach) {
    case Approach::limited_agents:
        return limited_agents_constraint(scene, make_limited(settings_.limited, perfect), perfect, ticks);
    case Approach::punishing: return punishing_constraint(scene, settings_.punished, perfect, ticks);
    case Approach::mechanics_dimensions: return mechanics_constraint(scene, perfect, ticks);
    }
    throw std::logic_error("unhandled approach");
}

Evaluation AgentEvaluator::evaluate(const Scene& scene, std::uint64_t seed) const
{
    const ConstraintReport r = report(scene, seed);
    Evaluation e;
    e.constraint = r.value;
    e.rank = settings_.approach == Approach::mechanics_dimensions ? r.value : rank_two_run(r.value);
    e.fitness = entropy_fitness(scene).fitness;
    if (settings_.approach == Approach::mechanics_dimensions) {
        e.dims = extract_dimensions(r.perfect_trace);
    }
    return e;
}

void record(Chromosome& c, const Evaluation& e)
{
    ++c.eval_count;
    if (e.constraint <= c.constraint) {
        c.constraint = e.constraint;
        c.rank = e.rank;
        c.fitness = e.fitness;
        c.dims = e.dims;
    }
    c.satisfied = c.constraint == 1.0;
}

Chromosome random_chromosome(const SliceBank& bank, int core_width, Rng& rng)
{
    Chromosome c;
    c.core.reserve(static_cast<std::size_t>(core_width));
    for (int i = 0; i < core_width; ++i) {
        c.core.push_back(bank.sample(rng));
    }
    return c;
}

namespace {

Chromosome fresh(std::vector<Slice> core)
{
    Chromosome c;
    c.core = std::move(core);
    return c;
}

} // namespace

std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& a, const Chromosome& b, int i, int j)
{
    const int n = static_cast<int>(a.core.size());
    if (b.core.size() != a.core.size() || i < 0 || i > j || j > n) {
        throw std::invalid_argument("crossover range out of bounds or genotype lengths differ");
    }
    std::vector<Slice> x = a.core;
    std::vector<Slice> y = b.core;
    std::swap_ranges(x.begin() + i, x.begin() + j, y.begin() + i);
    return {fresh(std::move(x)), fresh(std::move(y))};
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b, Rng& rng)
{
    // Pairs with i <= j over 0..n, counted row by row: row i holds n - i + 1 pairs.
    const long n = static_cast<long>(a.core.size());
    long k = std::uniform_int_distribution<long>(0, (n + 1) * (n + 2) / 2 - 1)(rng);
    long i = 0;
    while (k > n - i) {
        k -= n - i + 1;
        ++i;
    }
    return crossover_at(a, b, static_cast<int>(i), static_cast<int>(i + k));
}

Chromosome mutate_at(const Chromosome& c, int position, const Slice& replacement)
{
    if (position < 0 || position >= static_cast<int>(c.core.size())) {
        throw std::invalid_argument("mutation position out of bounds");
    }
    std::vector<Slice> core = c.core;
    core[static_cast<std::size_t>(position)] = replacement;
    return fresh(std::move(core));
}

Chromosome mutate(const Chromosome& c, const SliceBank& bank, Rng& rng)
{
    if (bank.empty()) {
        throw std::logic_error("cannot mutate from an empty slice bank");
    }
    const int pos = std::uniform_int_distribution<int>(0, static_cast<int>(c.core.size()) - 1)(rng);
    return mutate_at(c, pos, bank.sample(rng));
}

void SearchParams::validate() const
{
    if (shape.height < 1 || shape.core_width < 1 || shape.padding < 0) {
        throw ConfigError("scene shape must be positive");
    }
    if (population < 1 || offspring < 1 || cme_seeds < 1 || cell_infeasible_cap < 1 || workers < 1) {
        throw ConfigError("population, offspring, seeds, cell cap and workers must be positive");
    }
    if (crossover_rate < 0.0 || crossover_rate > 1.0 || mutation_rate < 0.0 || mutation_rate > 1.0) {
        throw ConfigError("crossover and mutation rates must lie in [0, 1]");
    }
}

std::uint64_t derive_seed(std::uint64_t batch_seed, std::uint64_t index)
{
    std::uint64_t z = batch_seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void evaluate_all(std::vector<Chromosome>& batch, const SceneEvaluator& evaluator, const SearchParams& params,
                  std::uint64_t batch_seed)
{
    std::vector<Evaluation> results(batch.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= batch.size()) {
                return;
            }
            try {
                results[i] = evaluator.evaluate(batch[i].phenotype(params.shape), derive_seed(batch_seed, i));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = batch.size();
            }
        }
    };

    const auto threads = std::min<std::size_t>(static_cast<std::size_t>(params.workers), batch.size());
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
        record(batch[i], results[i]);
    }
}

std::string stats_csv_header() { return "generation,best_fitness,feasible_count,elite_count\n"; }

std::string stats_csv_row(const GenerationStats& s)
{
    char buf[128];
    if (s.best_fitness) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%d,%d\n", s.generation, *s.best_fitness, s.feasible_count,
                      s.elite_count);
    } else {
        std::snprintf(buf, sizeof buf, "%d,,%d,%d\n", s.generation, s.feasible_count, s.elite_count);
    }
    return buf;
}

namespace {

void sort_feasible(std::vector<Chromosome>& v)
{
    std::stable_sort(v.begin(), v.end(), [](const Chromosome& a, const Chromosome& b) { return a.fitness > b.fitness; });
}

void sort_infeasible(std::vector<Chromosome>& v)
{
    std::stable_sort(v.begin(), v.end(), [](const Chromosome& a, const Chromosome& b) { return a.rank > b.rank; });
}

// Linear ranking: the k-th best of n has weight n - k.
const Chromosome& rank_select(const std::vector<Chromosome>& ranked, Rng& rng)
{
    const long n = static_cast<long>(ranked.size());
    long r = std::uniform_int_distribution<long>(0, n * (n + 1) / 2 - 1)(rng);
    long k = 0;
    while (r >= n - k) {
        r -= n - k;
        ++k;
    }
    return ranked[static_cast<std::size_t>(k)];
}

template <typename Pick>
void breed(std::vector<Chromosome>& out, int count, Pick pick, const SliceBank& bank, const SearchParams& params,
           Rng& rng)
{
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const std::size_t target = out.size() + static_cast<std::size_t>(count);
    while (out.size() < target) {
        const Chromosome& a = pick();
        const Chromosome& b = pick();
        std::pair<Chromosome, Chromosome> kids =
            coin(rng) < params.crossover_rate ? crossover(a, b, rng) : std::pair{fresh(a.core), fresh(b.core)};
        for (Chromosome* kid : {&kids.first, &kids.second}) {
            if (coin(rng) < params.mutation_rate) {
                *kid = mutate(*kid, bank, rng);
            }
        }
        out.push_back(std::move(kids.first));
        if (out.size() < target) {
            out.push_back(std::move(kids.second));
        }
    }
}

} // namespace

const Chromosome* FI2PopState::elite() const
{
    if (!feasible.empty()) {
        return &feasible.front();
    }
    if (!infeasible.empty()) {
        return &infeasible.front();
    }
    return nullptr;
}

FI2PopState fi2pop_init(const SceneEvaluator& evaluator, const SliceBank& bank, const SearchParams& params, Rng& rng)
{
    params.validate();
    std::vector<Chromosome> pop;
    for (int i = 0; i < params.population; ++i) {
        pop.push_back(random_chromosome(bank, params.shape.core_width, rng));
    }
    evaluate_all(pop, evaluator, params, rng());
    FI2PopState s;
    for (auto& c : pop) {
        (c.satisfied ? s.feasible : s.infeasible).push_back(std::move(c));
    }
    sort_feasible(s.feasible);
    sort_infeasible(s.infeasible);
    return s;
}

FI2PopState fi2pop_generation(const FI2PopState& state, const SceneEvaluator& evaluator, const SliceBank& bank,
                              const SearchParams& params, Rng& rng)
{
    params.validate();
    const int nf = static_cast<int>(state.feasible.size());
    const int ni = static_cast<int>(state.infeasible.size());
    if (nf + ni == 0) {
        throw std::invalid_argument("FI2Pop state is empty");
    }
    const int n = params.population;

    // Offspring quotas proportional to subpopulation size, at least one each when non-empty.
    int qf = static_cast<int>(std::lround(static_cast<double>(n) * nf / (nf + ni)));
    if (nf > 0) {
        qf = std::max(qf, 1);
    }
    if (ni > 0) {
        qf = std::min(qf, n - 1);
    }
    qf = std::clamp(qf, 0, n);
    const int qi = n - qf;

    std::vector<Chromosome> kids;
    kids.reserve(static_cast<std::size_t>(n) + 1);
    if (qf > 0) {
        breed(kids, qf, [&]() -> const Chromosome& { return rank_select(state.feasible, rng); }, bank, params, rng);
    }
    if (qi > 0) {
        breed(kids, qi, [&]() -> const Chromosome& { return rank_select(state.infeasible, rng); }, bank, params, rng);
    }

    Chromosome elite = *state.elite();
    const bool reevaluate_elite = evaluator.stochastic();
    if (reevaluate_elite) {
        kids.push_back(std::move(elite));
    }
    evaluate_all(kids, evaluator, params, rng());
    if (reevaluate_elite) {
        elite = std::move(kids.back());
        kids.pop_back();
    }

    FI2PopState next;
    next.generation = state.generation + 1;
    for (auto& c : kids) {
        (c.satisfied ? next.feasible : next.infeasible).push_back(std::move(c));
    }
    sort_feasible(next.feasible);
    sort_infeasible(next.infeasible);

    // The elite takes the place of the worst offspring.
    if (!next.infeasible.empty()) {
        next.infeasible.pop_back();
    } else {
        next.feasible.pop_back();
    }
    if (elite.satisfied) {
        next.feasible.insert(next.feasible.begin(), std::move(elite));
        sort_feasible(next.feasible);
    } else {
        next.infeasible.insert(next.infeasible.begin(), std::move(elite));
        sort_infeasible(next.infeasible);
    }
    return next;
}

GenerationStats fi2pop_stats(const FI2PopState& state)
{
    GenerationStats s;
    s.generation = state.generation;
    if (!state.feasible.empty()) {
        s.best_fitness = state.feasible.front().fitness;
    }
    s.feasible_count = static_cast<int>(state.feasible.size());
    s.elite_count = state.feasible.empty() ? 0 : 1;
    return s;
}

int CMEState::elite_count() const
{
    return static_cast<int>(std::count_if(cells.begin(), cells.end(), [](const auto& kv) { return kv.second.elite.has_value(); }));
}

void place(CMEState& state, Chromosome child, int cap)
{
    if (!child.dims) {
        throw std::invalid_argument("chromosome has no dimension vector; CME needs the mechanics evaluator");
    }
    Cell& cell = state.cells[child.dims->cell_index()];
    if (child.satisfied) {
        if (!cell.elite || child.fitness > cell.elite->fitness) {
            cell.elite = std::move(child);
        }
        return;
    }
    cell.infeasible.push_back(std::move(child));
    sort_infeasible(cell.infeasible);
    if (static_cast<int>(cell.infeasible.size()) > cap) {
        cell.infeasible.resize(static_cast<std::size_t>(cap));
    }
}

CMEState cme_init(const SceneEvaluator& evaluator, const SliceBank& bank, const SearchParams& params, Rng& rng)
{
    params.validate();
    std::vector<Chromosome> seeds;
    for (int i = 0; i < params.cme_seeds; ++i) {
        seeds.push_back(random_chromosome(bank, params.shape.core_width, rng));
    }
    evaluate_all(seeds, evaluator, params, rng());
    CMEState s;
    for (auto& c : seeds) {
        place(s, std::move(c), params.cell_infeasible_cap);
    }
    return s;
}

CMEState cme_iteration(const CMEState& state, const SceneEvaluator& evaluator, const SliceBank& bank,
                       const SearchParams& params, Rng& rng)
{
    params.validate();
    std::vector<const Cell*> occupied;
    for (const auto& [index, cell] : state.cells) {
        if (cell.elite || !cell.infeasible.empty()) {
            occupied.push_back(&cell);
        }
    }
    if (occupied.empty()) {
        throw std::invalid_argument("CME map is empty; seed it first");
    }
    auto pick = [&]() -> const Chromosome& {
        const Cell& cell = *occupied[std::uniform_int_distribution<std::size_t>(0, occupied.size() - 1)(rng)];
        if (cell.elite) {
            return *cell.elite;
        }
        return cell.infeasible[std::uniform_int_distribution<std::size_t>(0, cell.infeasible.size() - 1)(rng)];
    };

    std::vector<Chromosome> kids;
    breed(kids, params.offspring, pick, bank, params, rng);
    evaluate_all(kids, evaluator, params, rng());

    CMEState next = state;
    next.iteration = state.iteration + 1;
    next.last_feasible_children = 0;
    for (auto& c : kids) {
        next.last_feasible_children += c.satisfied ? 1 : 0;
        place(next, std::move(c), params.cell_infeasible_cap);
    }
    return next;
}

GenerationStats cme_stats(const CMEState& state)
{
    GenerationStats s;
    s.generation = state.iteration;
    for (const auto& [index, cell] : state.cells) {
        if (cell.elite && (!s.best_fitness || cell.elite->fitness > *s.best_fitness)) {
            s.best_fitness = cell.elite->fitness;
        }
    }
    s.feasible_count = state.last_feasible_children;
    s.elite_count = state.elite_count();
    return s;
}

} // namespace mechgen
