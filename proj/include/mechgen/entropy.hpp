#pragma once

#include "mechgen/scene.hpp"

namespace mechgen {

/// Simplicity score of a scene. All three fields lie in [0, 1].
struct FitnessReport {
    double tile_entropy = 0.0;   ///< symbol-frequency entropy, normalized by log(#distinct symbols)
    double change_entropy = 0.0; ///< changed/unchanged entropy over horizontal neighbours, in bits
    double fitness = 0.0;        ///< 0.2 * (1 - tile_entropy) + 0.8 * (1 - change_entropy)
};

inline constexpr double kTileEntropyWeight = 0.2;
inline constexpr double kChangeEntropyWeight = 0.8;

/// Lower entropy means a simpler, more horizontally consistent scene and a higher fitness.
FitnessReport entropy_fitness(const Scene& scene);

} // namespace mechgen
