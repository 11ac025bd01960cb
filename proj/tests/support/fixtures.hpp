#pragma once

#include <cstdint>
#include <vector>

#include "dynbench/domain.hpp"
#include "dynbench/experiments.hpp"
#include "dynbench/rng.hpp"

namespace dynbench::fixtures {

// Distribution supported on a random nonempty subset of the domain.
inline DiscreteDistribution partial_support(std::size_t d, Rng& rng) {
    std::vector<Point> order(d);
    for (Point x = 0; x < d; ++x) {
        order[x] = x;
    }
    rng.shuffle(order);
    const std::size_t keep = 1 + rng.below(d);
    const auto w = rng.simplex(keep);
    std::vector<double> mass(d, 0.0);
    for (std::size_t i = 0; i < keep; ++i) {
        mass[order[i]] = w[i];
    }
    return DiscreteDistribution(std::move(mass));
}

// Realizable Complete-class instance with random D, random truth and D0 = D.
inline Instance realizable(std::size_t d, std::uint64_t seed, ClassKind kind = ClassKind::Complete) {
    GeneratorSpec g;
    g.dimension = d;
    g.kind = kind;
    g.underlying = GeneratorSpec::Shape::Random;
    g.seed = seed;
    return generate_instance(g);
}

// Same, with D0 on a random subset of supp(D).
inline Instance shifted(std::size_t d, std::uint64_t seed, ClassKind kind = ClassKind::Complete) {
    auto inst = realizable(d, seed, kind);
    Rng rng(derive_seed(seed, 1));
    return inst.with_initial(partial_support(d, rng));
}

// Distribution pair on d points with random masses.
inline DiscreteDistribution random_distribution(std::size_t d, Rng& rng) {
    return DiscreteDistribution(rng.simplex(d));
}

}  // namespace dynbench::fixtures
