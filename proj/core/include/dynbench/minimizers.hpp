#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dynbench/domain.hpp"
#include "dynbench/rng.hpp"

namespace dynbench {

/// Float slack on the eps contract: risk <= min + eps + kConsistencySlack.
inline constexpr double kConsistencySlack = 1e-9;

enum class MinimizerMode { Perfect, RandomApprox, AdversarialApprox, Scripted };

/// Configuration of the eps-approximate risk minimizer oracle.
struct MinimizerSpec {
    double epsilon = 0.0;
    MinimizerMode mode = MinimizerMode::Perfect;
    std::uint64_t seed = 0;
    PointSet target;                 // AdversarialApprox only
    std::vector<Hypothesis> script;  // Scripted only

    static MinimizerSpec perfect();
    static MinimizerSpec random(double epsilon, std::uint64_t seed);
    static MinimizerSpec adversarial(double epsilon, PointSet target);
    static MinimizerSpec scripted(double epsilon, std::vector<Hypothesis> script);

    /// Throws InvalidArgument on a broken invariant.
    void validate() const;
};

struct ConsistencyReport {
    bool consistent = false;
    double risk = 0.0;
    double minimum = 0.0;
    double epsilon = 0.0;
};

/// Does (P, h) satisfy risk_01(h, P) <= min_H risk_01(., P) + eps (+ slack)?
ConsistencyReport verify_eps_consistency(const DiscreteDistribution& p, const Hypothesis& h, const Instance& inst,
                                         double epsilon);

/// Every member of the class within eps of the optimum on P, in enumeration order.
std::vector<Hypothesis> eps_feasible_set(const Instance& inst, const DiscreteDistribution& p, double epsilon);

/// Stateful oracle: owns the call counter and the seeded generator.
///
/// Perfect returns the lowest-index exact minimizer. RandomApprox draws
/// uniformly from the feasible set, except on Complete classes where a
/// constructive sampler flips points away from f in random order while
/// the flipped mass stays within eps (zero-mass and noisy points are
/// flipped by a fair coin). AdversarialApprox maximizes the D-mass of
/// its errors inside the target set, then the D-mass of all its errors,
/// then takes the lowest index. Scripted replays a fixed sequence.
///
/// Every output is checked against the eps contract before it is returned.
class Minimizer {
public:
    explicit Minimizer(MinimizerSpec spec);

    Hypothesis minimize(const Instance& inst, const DiscreteDistribution& p);

    std::size_t calls() const noexcept { return calls_; }
    const MinimizerSpec& spec() const noexcept { return spec_; }
    double epsilon() const noexcept { return spec_.epsilon; }

private:
    Hypothesis perfect(const Instance& inst, const DiscreteDistribution& p) const;
    Hypothesis random_approx(const Instance& inst, const DiscreteDistribution& p);
    Hypothesis adversarial(const Instance& inst, const DiscreteDistribution& p) const;
    Hypothesis scripted(const Instance& inst, const DiscreteDistribution& p);

    MinimizerSpec spec_;
    std::size_t calls_ = 0;
    Rng rng_;
};

}  // namespace dynbench
