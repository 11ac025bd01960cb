#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dynbench/domain.hpp"
#include "dynbench/hier_engine.hpp"
#include "dynbench/minimizers.hpp"
#include "dynbench/path_engine.hpp"

namespace dynbench {

/// Which class the scripted hypotheses are placed in.
enum class WitnessClass { Explicit, Intervals };

enum class WitnessKind { Path, Hier };

/// Lower-bound sequence for path benchmarks with eps = 1/n.
///
/// Layout in 1-based coordinates: d = 8n^2, common block K = {1},
/// K_0 = [1, k'] with k' = 2n, and for 1 <= t < T = 2n
/// K_t = {1} u (k' + (t-1)(k'-1), k' + t(k'-1)]. Round t >= T replays
/// block phi(t), the index with the smallest running tally.
/// Blocks are stored 0-based.
struct PathWitness {
    double epsilon = 0.0;
    std::size_t inverse_epsilon = 0;
    std::size_t dimension = 0;
    std::size_t common_size = 1;  // k
    std::size_t block_size = 0;   // k'
    std::size_t horizon = 0;      // T
    std::size_t rounds = 0;       // L
    PointSet common;
    std::vector<PointSet> blocks;           // flipped set of the hypothesis played at round t
    std::vector<std::size_t> assignment;    // phi(t) for t = T, T+1, ..., L-1
    std::vector<std::vector<double>> tallies;  // vbar_{t, tau} for t >= T, tau < T
    std::vector<std::vector<double>> mixture;  // schedule the tallies were computed from
    Instance instance;
    MinimizerSpec minimizer;
    double claimed_risk = 0.0;  // D(K)
};

/// Lower-bound sequence for the depth-2, width-3 hierarchy with eps = 1/n.
///
/// Nine blocks K_0..K_8 for the leaf calls and the three sets K_g0..K_g2
/// where each inner majority errs; the point 1 is in all of them.
struct HierWitness {
    double epsilon = 0.0;
    std::size_t inverse_epsilon = 0;
    std::size_t dimension = 0;
    bool extrapolated = false;  // anything other than eps = 1/2, d = 16
    PointSet common;
    std::vector<PointSet> blocks;
    std::vector<PointSet> group_blocks;
    Instance instance;
    MinimizerSpec minimizer;
    double claimed_risk = 0.0;  // D(K_g0 n K_g1 n K_g2)
};

/// Returns n when eps = 1/n for a natural n >= 2, else throws InvalidEpsilon.
std::size_t inverse_of(double epsilon);

/// Build the path witness for `rounds` rounds. `initial` must be ascending
/// in index order (uniform when omitted). The phi tallies follow the
/// mixture schedule that `mixture` produces, so run the engine with the
/// same policy.
PathWitness build_path_witness(double epsilon, std::size_t rounds,
                               std::optional<DiscreteDistribution> initial = std::nullopt,
                               const WeightPolicy& mixture = WeightPolicy::uniform(),
                               WitnessClass cls = WitnessClass::Explicit);

/// Build the hierarchical witness. The default domain has 2/eps^3 points;
/// the domain must hold every block (3/eps^2 - 2 points) and satisfy
/// d >= 1/eps^3 + 2/eps^2 - 1.
HierWitness build_hier_witness(double epsilon, std::optional<std::size_t> dimension = std::nullopt,
                               std::optional<DiscreteDistribution> initial = std::nullopt,
                               WitnessClass cls = WitnessClass::Explicit);

/// Instance of the witness whose class is TwoIntervals (path) or
/// ThreeIntervals (hier). Throws MembershipViolation if a scripted
/// hypothesis is not a member.
Instance build_interval_witness(WitnessKind kind, double epsilon);

struct WitnessStepCheck {
    std::string label;           // "t=3" or the leaf's node path and step
    double closed_form = 0.0;    // risk from the block-overlap formula
    double engine_risk = 0.0;    // risk the engine recorded
    bool agrees = false;         // |closed_form - engine_risk| <= 1e-9
    bool consistent = false;     // closed_form <= eps (+ slack)
};

struct WitnessReport {
    std::vector<WitnessStepCheck> steps;
    bool common_error = false;   // common block inside every relevant error set
    bool tallies_ok = true;      // path only: sum <= 1 and vbar_{t, phi(t)} <= eps/2
    double majority_risk = 0.0;
    double claimed_risk = 0.0;
    bool attains = false;        // |majority_risk - claimed_risk| <= 1e-12
    std::vector<std::string> failures;

    bool ok() const noexcept { return failures.empty(); }
};

WitnessReport verify_witness(const PathWitness& witness, const BenchmarkTrace& trace);
WitnessReport verify_witness(const HierWitness& witness, const HierTrace& trace);

/// Blocks in 1-based proof coordinates as maximal runs, e.g. "[1] (20, 39]".
std::string proof_coordinates(const PointSet& block);

/// Aligned text table of the block layout.
std::string layout_text(const PathWitness& witness);
std::string layout_text(const HierWitness& witness);

}  // namespace dynbench
