#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dynbench/domain.hpp"
#include "dynbench/minimizers.hpp"

namespace dynbench {

/// How mixture or majority weights are chosen.
///
/// For mixtures, Explicit holds one vector per round t >= 1 at index t-1,
/// laid out as (w_{t,0}, wbar_{t,0}, ..., wbar_{t,t-1}). For majorities,
/// Explicit holds a single vector with one weight per classifier, and
/// prefixes use its leading entries.
struct WeightPolicy {
    enum class Kind { Uniform, Explicit, RandomSimplex };

    Kind kind = Kind::Uniform;
    std::vector<std::vector<double>> weights;
    std::uint64_t seed = 0;

    static WeightPolicy uniform() { return {}; }
    static WeightPolicy explicit_weights(std::vector<std::vector<double>> weights);
    static WeightPolicy random_simplex(std::uint64_t seed);

    bool is_uniform() const noexcept { return kind == Kind::Uniform; }
};

/// Materialized mixture weights for rounds 1..rounds-1 (index t-1 has t+1 entries).
std::vector<std::vector<double>> mixture_schedule(const WeightPolicy& policy, std::size_t rounds);

/// Materialized majority weights for `count` classifiers.
std::vector<double> majority_schedule(const WeightPolicy& policy, std::size_t count);

struct PathConfig {
    std::size_t rounds = 3;
    WeightPolicy mixture;
    WeightPolicy majority;
};

struct PathRound {
    DiscreteDistribution distribution;  // D_t
    std::vector<double> weights;        // mixture weights behind D_t; {1} at t = 0
    Hypothesis classifier;              // h_t
    PointSet errors;                    // E_t
    double risk_on_distribution = 0.0;  // R_{D_t}(h_t)
    double minimum_on_distribution = 0.0;
    double risk_on_underlying = 0.0;    // R_D(h_t)
    double majority_risk = 0.0;         // R_D(maj(h_0..h_t))
};

struct BenchmarkTrace {
    std::vector<PathRound> rounds;
    std::vector<DiscreteDistribution> error_distributions;  // Dbar_t for every non-terminal round
    std::optional<std::size_t> perfect_round;
    std::size_t configured_rounds = 0;
    double epsilon = 0.0;
    bool uniform_mixture = true;
    std::vector<double> majority_weights;

    std::vector<Hypothesis> classifiers() const;

    /// Weighted majority over every recorded round.
    Hypothesis final_majority() const;

    /// What the benchmark hands back: the zero-risk classifier when the run
    /// stopped early, the final weighted majority otherwise. The two differ
    /// when the prefix majority ties on the points the last model fixed.
    Hypothesis output() const;
};

/// Run path dynamic benchmarking on a realizable instance:
///   h_t = A(D_t); Dbar_t = D | E_t; D_{t+1} = mix(D_0, Dbar_0, ..., Dbar_t).
/// Stops early, setting perfect_round, when E_t has zero D-mass.
BenchmarkTrace run_path(const Instance& inst, Minimizer& minimizer, const PathConfig& cfg);

/// |{t : R_D(h_t) > alpha}| <= 1/alpha.
bool check_lemma1(const BenchmarkTrace& trace, double alpha);

/// Probability that a uniform pick among the configured rounds is alpha-bad is
/// at most delta. Requires configured_rounds >= 1/(delta alpha). Rounds never
/// run because the benchmark ended with a zero-risk model count as alpha-good.
bool check_corollary_random_pick(const BenchmarkTrace& trace, double alpha, double delta);

struct BoundReport {
    double risk = 0.0;      // left-hand side
    double bound = 0.0;     // right-hand side
    double distance = 0.0;  // d_{H Delta H}(D0, D)
    bool holds = false;
};

/// R_D(maj(h_0, h_1, h_2)) <= 11 eps^2 + 8 eps d_{H Delta H}(D0, D).
BoundReport check_thm1_bound(const Instance& inst, const BenchmarkTrace& trace);

double thm1_bound(double epsilon, double distance);

}  // namespace dynbench
