#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dynbench/domain.hpp"
#include "dynbench/minimizers.hpp"

namespace dynbench {

struct NoisyRound {
    DiscreteDistribution distribution;  // D_t
    std::vector<double> weights;
    Hypothesis classifier;
    PointSet errors;                    // realizable error set
    double noise_share = 0.0;           // delta_t = Pr_{D_t}(noisy)
    double realizable_mass = 0.0;       // D_t(E_t) = (1 - delta_t) R on the clean part
    double realizable_risk = 0.0;       // risk on D_t restricted to clean points; 0 when delta_t = 1
    double noisy_risk = 0.0;            // delta_t / 2
    double risk_on_distribution = 0.0;
    double risk_on_underlying = 0.0;
    double majority_risk = 0.0;
    std::optional<double> bound;        // lower bound on delta_t, when the bound applies
    std::optional<DiscreteDistribution> error_distribution;
    double error_noise_weight = 0.0;    // mass of the error distribution on noisy points
};

struct NoisyTrace {
    std::vector<NoisyRound> rounds;
    std::optional<std::size_t> perfect_round;
    double delta = 0.0;                 // Pr_D(noisy)
    double epsilon = 0.0;
    bool delta_dominant = false;        // delta > eps
    bool bounds_checked = false;        // delta > eps and Pr_{D0}(noisy) >= delta
    std::vector<std::string> warnings;

    /// Every checked round satisfies delta_t >= bound_t.
    bool bounds_hold() const;
    /// Every round satisfies D_t(E_t) <= eps (+ slack).
    bool clean_constraint_holds() const;
};

/// Path benchmarking with uniform mixtures on an instance whose noisy
/// points carry fair-coin labels. The error distribution of round t puts
/// weight proportional to D(x)/2 on noisy points and D(x) on the
/// realizable error set. Delegates to the path engine when the noisy set
/// is empty. When delta <= eps the run proceeds with a warning and no
/// bound is recorded.
NoisyTrace run_noisy_path(const Instance& inst, Minimizer& minimizer, std::size_t rounds);

/// 1 / (2 (1 + 8 (eps/delta) t)). Requires t >= 1 and delta > eps.
double delta_lower_bound(std::size_t t, double epsilon, double delta);

/// delta/2 + 1/2 * 1/(1 + 2 eps/delta), the sharper bound at t = 1.
double delta1_lower_bound(double epsilon, double delta);

}  // namespace dynbench
