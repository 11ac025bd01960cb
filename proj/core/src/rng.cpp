#include "dynbench/rng.hpp"

#include <cmath>
#include <limits>

namespace dynbench {

std::size_t Rng::below(std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    // Reject the top sliver so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw = engine_();
    while (draw >= limit) {
        draw = engine_();
    }
    return static_cast<std::size_t>(draw % bound);
}

double Rng::exponential() {
    return -std::log1p(-uniform());
}

std::vector<double> Rng::simplex(std::size_t n) {
    std::vector<double> weights(n);
    double total = 0.0;
    for (auto& w : weights) {
        // Bounded away from zero so every component stays in the support.
        w = exponential() + 1e-9;
        total += w;
    }
    for (auto& w : weights) {
        w /= total;
    }
    return weights;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace dynbench
