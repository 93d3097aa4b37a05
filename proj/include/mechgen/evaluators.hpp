#pragma once

#include "mechgen/agent.hpp"

#include <array>
#include <optional>

namespace mechgen {

/// Outcome of judging one scene against a constraint.
struct ConstraintReport {
    double value = 0.0; ///< [-1, 1] for the two-run comparison, [0, 1] for completion
    bool satisfied = false;
    Playthrough perfect_trace;
    std::optional<Playthrough> limited_trace;
};

/// 1 when the perfect run wins and the limited run does not; otherwise the distance gap
/// (d_perf - d_limit) / d_scene.
double two_run_constraint(bool perfect_won, bool limited_won, double d_perfect, double d_limited, double d_scene);

/// 1 on a win, otherwise d / d_scene.
double completion_constraint(bool won, double d, double d_scene);

/// Plays the scene with both agents in the base model.
ConstraintReport limited_agents_constraint(const Scene& scene, const AgentConfig& limited, const AgentConfig& perfect,
                                           int tick_budget);

/// The limited run is the perfect agent planning and executing under the punishing model.
ConstraintReport punishing_constraint(const Scene& scene, PunishedMechanic mechanic, const AgentConfig& perfect,
                                      int tick_budget);

ConstraintReport mechanics_constraint(const Scene& scene, const AgentConfig& perfect, int tick_budget);

/// Map dimensions, in bit order.
enum class Dimension { jump, high_jump, long_jump, stomp, shell_kill, fall_kill, mushroom, coin };

inline constexpr int kDimensionCount = 8;

std::string_view dimension_name(Dimension d);

/// Which mechanics fired during a playthrough. Cell index = sum of bit_i * 2^i.
struct DimensionVector {
    std::array<bool, kDimensionCount> bits{};

    bool operator[](Dimension d) const { return bits[static_cast<std::size_t>(d)]; }
    int cell_index() const;
    static DimensionVector from_cell(int index);

    bool operator==(const DimensionVector&) const = default;
};

/// SPEED has no dimension; every other event kind sets its bit.
DimensionVector extract_dimensions(const Playthrough& trace);

/// Maps a two-run constraint from [-1, 1] onto [0, 1] for ranking infeasible chromosomes.
inline double rank_two_run(double value) { return (value + 1.0) / 2.0; }

} // namespace mechgen
