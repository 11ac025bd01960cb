#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace dynbench {

// Seeded generator with distribution helpers written out by hand: the
// std:: distributions are implementation-defined, and traces must be
// reproducible bit-for-bit from a seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be positive.
    std::size_t below(std::size_t n);

    bool coin() { return (engine_() >> 63) != 0; }

    template <class T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[below(i)]);
        }
    }

    /// Draw from the flat Dirichlet on the (n-1)-simplex. All entries are positive.
    std::vector<double> simplex(std::size_t n);

    /// Standard exponential variate.
    double exponential();

private:
    std::mt19937_64 engine_;
};

/// Mix a base seed with a stream index (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace dynbench
