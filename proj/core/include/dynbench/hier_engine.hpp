#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynbench/domain.hpp"
#include "dynbench/minimizers.hpp"
#include "dynbench/path_engine.hpp"

namespace dynbench {

/// Depth-k, width-w hierarchical benchmark.
///
/// Mixture policy: Uniform; RandomSimplex (one draw per leaf call with
/// more than one atom); or Explicit, one vector per leaf call in execution
/// order. Majority policy: Uniform; Explicit (weights[0] of length w,
/// reused at every node); or RandomSimplex (one draw per node).
struct HierConfig {
    std::size_t depth = 2;
    std::size_t width = 3;
    WeightPolicy mixture;
    WeightPolicy majority;

    /// Number of minimizer calls without early stops: w^k.
    std::uint64_t annotator_rounds() const;
};

/// A mixture component: the initial distribution or an error distribution.
struct HierAtom {
    std::string label;  // "D0" or "E(<node path>:<step>)"
    DiscreteDistribution distribution;
    PointSet source_errors;  // error set it conditions on; empty for D0
    bool initial = false;
};

/// One call of the base minimizer.
struct LeafCall {
    std::string node_path;
    std::size_t step = 0;
    std::vector<std::size_t> atoms;
    std::vector<double> weights;
    DiscreteDistribution distribution;
    Hypothesis classifier;
    double risk_on_distribution = 0.0;
    double minimum_on_distribution = 0.0;
    double risk_on_underlying = 0.0;
};

struct HierNode;

struct HierStep {
    std::vector<std::size_t> atoms;      // mixture components visible to this step
    Hypothesis classifier;               // h_t returned by the child (or the leaf call)
    PointSet errors;
    double risk_on_underlying = 0.0;
    std::optional<std::size_t> error_atom;
    std::optional<std::size_t> leaf;     // index into HierTrace::leaves at depth 1
    std::vector<HierNode> subtree;       // exactly one node above depth 1
};

struct HierNode {
    std::string path;  // "r", "r.0", "r.0.2", ...
    std::size_t depth = 0;
    std::vector<std::size_t> inherited_atoms;
    std::vector<HierStep> steps;
    std::vector<double> majority_weights;
    Hypothesis output;
    bool early_success = false;
};

struct HierTrace {
    std::vector<HierAtom> atoms;
    std::vector<LeafCall> leaves;
    HierNode root;
    std::size_t depth = 0;
    std::size_t width = 0;
    double epsilon = 0.0;
    bool uniform_mixture = true;
    bool uniform_majority = true;

    /// Classifiers returned by the root's steps (g_0, g_1, ... at depth 2).
    std::vector<Hypothesis> top_level() const;
    const Hypothesis& output() const noexcept { return root.output; }
};

/// A^(0) = minimize; A^(k)(atoms): h_0 = A^(k-1)(atoms); for t >= 1 add
/// the atom D | E_{h_{t-1}} and call h_t = A^(k-1)(atoms so far); return
/// the weighted majority. A node sees its ancestors' atoms plus the error
/// atoms of its own earlier steps. A zero-mass error set ends the node,
/// which then returns that classifier.
HierTrace run_hier(const Instance& inst, Minimizer& minimizer, const HierConfig& cfg);

/// R_D(maj(g_0, g_1, g_2)) <= 543 eps^3 + 300 eps^2 d_{H Delta H}(D0, D). Needs (k, w) = (2, 3), uniform weights.
BoundReport check_thm4_bound(const Instance& inst, const HierTrace& trace);

double thm4_bound(double epsilon, double distance);

}  // namespace dynbench
