#include "mechgen/entropy.hpp"

#include <array>
#include <cmath>

namespace mechgen {

namespace {

// Shannon entropy (nats) of a frequency table.
double entropy_of(const std::array<long, 256>& counts, long total)
{
    double h = 0.0;
    for (long c : counts) {
        if (c > 0) {
            const double p = static_cast<double>(c) / static_cast<double>(total);
            h -= p * std::log(p);
        }
    }
    return h;
}

} // namespace

FitnessReport entropy_fitness(const Scene& scene)
{
    const int w = scene.width();
    const int h = scene.height();

    std::array<long, 256> symbols{};
    for (int c = 0; c < w; ++c) {
        for (char t : scene.column(c).tiles()) {
            ++symbols[static_cast<unsigned char>(t)];
        }
    }
    int support = 0;
    for (long n : symbols) {
        support += n > 0 ? 1 : 0;
    }

    FitnessReport report;
    if (support > 1) {
        report.tile_entropy = entropy_of(symbols, static_cast<long>(w) * h) / std::log(static_cast<double>(support));
    }

    const long pairs = static_cast<long>(h) * (w - 1);
    long changed = 0;
    for (int c = 0; c + 1 < w; ++c) {
        const auto& left = scene.column(c).tiles();
        const auto& right = scene.column(c + 1).tiles();
        for (int r = 0; r < h; ++r) {
            changed += left[static_cast<std::size_t>(r)] != right[static_cast<std::size_t>(r)] ? 1 : 0;
        }
    }
    if (pairs > 0 && changed > 0 && changed < pairs) {
        std::array<long, 256> binary{};
        binary[0] = pairs - changed;
        binary[1] = changed;
        report.change_entropy = entropy_of(binary, pairs) / std::log(2.0);
    }

    report.fitness = kTileEntropyWeight * (1.0 - report.tile_entropy)
        + kChangeEntropyWeight * (1.0 - report.change_entropy);
    return report;
}

} // namespace mechgen
