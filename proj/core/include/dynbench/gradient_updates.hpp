#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dynbench/domain.hpp"
#include "dynbench/minimizers.hpp"

namespace dynbench {

inline constexpr double kDefaultHingeStep = 0.05;

/// Real-valued score over the domain; predicts sign(h(x)) with sign(0) = +1.
class RealHypothesis {
public:
    explicit RealHypothesis(std::vector<double> values);
    static RealHypothesis zeros(std::size_t size);
    static RealHypothesis scaled(const Hypothesis& h, double factor);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](Point x) const { return values_[x]; }
    std::span<const double> values() const noexcept { return values_; }

    Hypothesis sign() const;
    /// this + coefficient * h
    RealHypothesis plus(const Hypothesis& h, double coefficient) const;

private:
    std::vector<double> values_;
};

/// sum_x P[x] max(1 - h(x) f(x), 0)
double hinge_risk(const RealHypothesis& h, const Instance& inst, const DiscreteDistribution& p);

/// sum_x P[x] exp(-h(x) f(x))
double exp_risk(const RealHypothesis& h, const Instance& inst, const DiscreteDistribution& p);

/// Points with margin h(x) f(x) < 1.
PointSet margin_errors(const RealHypothesis& h, const Instance& inst);

enum class StepStatus { Updated, Converged, PerfectWeakLearner };

struct HingeStep {
    StepStatus status = StepStatus::Updated;
    std::optional<Hypothesis> direction;  // hbar
    double error_mass = 0.0;              // D(margin errors)
    double certificate = 0.0;             // sum_x Dbar_h[x] hbar(x) f(x)
    double coefficient = 0.0;             // eta * hinge risk before the step
    double risk_before = 0.0;
    double risk_after = 0.0;
    double zero_one_after = 0.0;          // zero-one risk of sign(h) on D after the step
};

struct HingeState {
    RealHypothesis h = RealHypothesis::zeros(0);
    std::vector<HingeStep> history;
    bool converged = false;
};

/// hbar = A(D | margin errors); h += eta * hinge_risk(h) * hbar. Converged
/// when the margin errors have no D-mass. Throws DescentViolation when
/// the certificate falls below 1 - 2 eps.
const HingeStep& hinge_step(HingeState& state, const Instance& inst, Minimizer& minimizer,
                            double eta = kDefaultHingeStep);

/// Up to `rounds` hinge steps from h = 0, stopping at convergence.
HingeState run_hinge(const Instance& inst, Minimizer& minimizer, std::size_t rounds, double eta = kDefaultHingeStep);

struct BoostStep {
    StepStatus status = StepStatus::Updated;
    Hypothesis weak;
    double weak_risk = 0.0;       // r = risk of the weak hypothesis on D_h
    double eta = 0.0;             // 1/2 ln(1/r - 1); infinite on a perfect weak learner
    double normalizer = 0.0;      // Z_h before the step
    double surrogate_after = 0.0; // exp risk after the step
    double predicted_after = 0.0; // 2 Z sqrt(r (1 - r))
    double zero_one_after = 0.0;  // zero-one risk of the updated predictor on D
    double rate_bound = 0.0;      // exp(-(1 - 2 eps)^2 t / 2)
};

struct BoostState {
    RealHypothesis h = RealHypothesis::zeros(0);
    std::size_t round = 0;
    std::vector<BoostStep> history;
    std::optional<Hypothesis> exact;  // set when a weak hypothesis had zero weighted risk

    /// Current +-1 predictor: the exact classifier if found, else sign(h).
    Hypothesis predictor() const;
};

/// One exponential-loss step with the optimal step size. A zero weighted
/// risk ends the run with the weak hypothesis as the exact classifier.
/// Throws StalledWeakLearner when r >= 1/2.
const BoostStep& boost_step(BoostState& state, const Instance& inst, Minimizer& minimizer);

struct BoostRun {
    BoostState state;
    bool rate_holds = true;         // zero-one risk <= rate bound every round
    bool contraction_holds = true;  // |surrogate_after - 2 Z sqrt(r(1-r))| <= 1e-9 every updating step
};

/// Up to `rounds` boost steps from h = 0.
BoostRun run_boost(const Instance& inst, Minimizer& minimizer, std::size_t rounds);

double boost_rate_bound(double epsilon, std::size_t t);

}  // namespace dynbench
