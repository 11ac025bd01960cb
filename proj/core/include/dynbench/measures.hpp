#pragma once

#include <span>
#include <vector>

#include "dynbench/domain.hpp"

namespace dynbench {

/// Weighted ensemble of classifiers; weights are normalized on construction.
class EnsembleVote {
public:
    EnsembleVote(std::vector<Hypothesis> members, std::vector<double> weights);

    static EnsembleVote uniform(std::vector<Hypothesis> members);

    const std::vector<Hypothesis>& members() const noexcept { return members_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

private:
    std::vector<Hypothesis> members_;
    std::vector<double> weights_;
};

/// Realizable-part disagreement with the truth: {x not noisy : h(x) != f(x)}.
PointSet error_set(const Hypothesis& h, const Instance& inst);

/// Zero-one risk of h under P. Noisy points contribute 1/2 of their mass
/// regardless of h, since their labels are fair coin flips.
double risk_01(const Hypothesis& h, const DiscreteDistribution& p, const Instance& inst);

/// min over the class of risk_01(., P). Exact because f is in the class:
/// only the noisy floor of 1/2 Pr_P(noisy) remains.
double min_risk(const DiscreteDistribution& p, const Instance& inst);

/// Pointwise weighted vote; a tie (sum exactly 0) resolves to +1.
Hypothesis majority(const EnsembleVote& vote);

/// Convenience: uniform majority of `members`.
Hypothesis majority(std::span<const Hypothesis> members);

/// Half the L1 distance; the sup over all events of |P1(A) - P2(A)|.
double total_variation(const DiscreteDistribution& p1, const DiscreteDistribution& p2);

/// sup over (h, h') in H^2 of |P1(h != h') - P2(h != h')|. Complete classes
/// use the total-variation closed form; other kinds enumerate pairs.
double hdh_distance(const DiscreteDistribution& p1, const DiscreteDistribution& p2, const HypothesisClass& cls);

/// Pair-enumeration route for hdh_distance, available for every enumerable class.
double hdh_distance_by_pairs(const DiscreteDistribution& p1, const DiscreteDistribution& p2,
                             const HypothesisClass& cls);

/// Pr_D(E_h1 and E_h2) on a realizable instance.
double joint_error_mass(const Hypothesis& h1, const Hypothesis& h2, const Instance& inst);

}  // namespace dynbench
