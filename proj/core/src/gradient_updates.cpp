#include "dynbench/gradient_updates.hpp"

#include <cmath>
#include <limits>

#include "dynbench/errors.hpp"
#include "dynbench/measures.hpp"

namespace dynbench {

namespace {

constexpr double kContractionTolerance = 1e-9;

void require_weak_learning(const Instance& inst, const Minimizer& minimizer) {
    if (!inst.realizable()) {
        throw InvalidArgument("gradient updates run on realizable instances");
    }
    if (!(minimizer.epsilon() < 0.5)) {
        throw InvalidArgument("gradient updates need eps < 1/2");
    }
}

}  // namespace

RealHypothesis::RealHypothesis(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw InvalidArgument("real hypothesis values must be finite");
        }
    }
}

RealHypothesis RealHypothesis::zeros(std::size_t size) {
    return RealHypothesis(std::vector<double>(size, 0.0));
}

RealHypothesis RealHypothesis::scaled(const Hypothesis& h, double factor) {
    std::vector<double> v(h.size());
    for (Point x = 0; x < h.size(); ++x) {
        v[x] = factor * h[x];
    }
    return RealHypothesis(std::move(v));
}

Hypothesis RealHypothesis::sign() const {
    std::vector<Label> labels(values_.size());
    for (std::size_t x = 0; x < values_.size(); ++x) {
        labels[x] = values_[x] >= 0.0 ? Label{1} : Label{-1};
    }
    return Hypothesis(std::move(labels));
}

RealHypothesis RealHypothesis::plus(const Hypothesis& h, double coefficient) const {
    if (h.size() != values_.size()) {
        throw InvalidArgument("hypothesis sizes differ");
    }
    std::vector<double> v = values_;
    for (std::size_t x = 0; x < v.size(); ++x) {
        v[x] += coefficient * h[x];
    }
    return RealHypothesis(std::move(v));
}

double hinge_risk(const RealHypothesis& h, const Instance& inst, const DiscreteDistribution& p) {
    const auto& f = inst.truth();
    double total = 0.0;
    for (Point x = 0; x < p.size(); ++x) {
        total += p[x] * std::max(1.0 - h[x] * f[x], 0.0);
    }
    return total;
}

double exp_risk(const RealHypothesis& h, const Instance& inst, const DiscreteDistribution& p) {
    const auto& f = inst.truth();
    double total = 0.0;
    for (Point x = 0; x < p.size(); ++x) {
        total += p[x] * std::exp(-h[x] * f[x]);
    }
    return total;
}

PointSet margin_errors(const RealHypothesis& h, const Instance& inst) {
    const auto& f = inst.truth();
    PointSet out;
    for (Point x = 0; x < h.size(); ++x) {
        if (h[x] * f[x] < 1.0) {
            out.push_back(x);
        }
    }
    return out;
}

const HingeStep& hinge_step(HingeState& state, const Instance& inst, Minimizer& minimizer, double eta) {
    require_weak_learning(inst, minimizer);
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw InvalidArgument("hinge step size must be positive");
    }
    if (state.h.size() != inst.size()) {
        throw InvalidArgument("hinge state and instance live on different domains");
    }
    const auto& underlying = inst.underlying();
    const auto& f = inst.truth();
    HingeStep step;
    step.risk_before = hinge_risk(state.h, inst, underlying);
    const PointSet errors = margin_errors(state.h, inst);
    step.error_mass = prob_of(underlying, errors);
    if (!(step.error_mass > 0.0)) {
        step.status = StepStatus::Converged;
        step.risk_after = step.risk_before;
        step.zero_one_after = risk_01(state.h.sign(), underlying, inst);
        state.converged = true;
        state.history.push_back(std::move(step));
        return state.history.back();
    }

    const DiscreteDistribution target = condition(underlying, errors);
    Hypothesis direction = minimizer.minimize(inst, target);
    for (Point x = 0; x < target.size(); ++x) {
        step.certificate += target[x] * direction[x] * f[x];
    }
    if (step.certificate < 1.0 - 2.0 * minimizer.epsilon() - kConsistencySlack) {
        throw DescentViolation("hinge descent certificate " + std::to_string(step.certificate) + " below 1 - 2 eps");
    }
    step.coefficient = eta * step.risk_before;
    state.h = state.h.plus(direction, step.coefficient);
    step.risk_after = hinge_risk(state.h, inst, underlying);
    step.zero_one_after = risk_01(state.h.sign(), underlying, inst);
    step.direction = std::move(direction);
    state.history.push_back(std::move(step));
    return state.history.back();
}

HingeState run_hinge(const Instance& inst, Minimizer& minimizer, std::size_t rounds, double eta) {
    HingeState state{.h = RealHypothesis::zeros(inst.size())};
    for (std::size_t t = 0; t < rounds && !state.converged; ++t) {
        hinge_step(state, inst, minimizer, eta);
    }
    return state;
}

Hypothesis BoostState::predictor() const {
    return exact ? *exact : h.sign();
}

double boost_rate_bound(double epsilon, std::size_t t) {
    const double gap = 1.0 - 2.0 * epsilon;
    return std::exp(-gap * gap * static_cast<double>(t) / 2.0);
}

const BoostStep& boost_step(BoostState& state, const Instance& inst, Minimizer& minimizer) {
    require_weak_learning(inst, minimizer);
    if (state.exact) {
        throw InvalidArgument("boosting already found an exact classifier");
    }
    if (state.h.size() != inst.size()) {
        throw InvalidArgument("boost state and instance live on different domains");
    }
    const auto& underlying = inst.underlying();
    const auto& f = inst.truth();

    std::vector<double> weights(inst.size());
    double z = 0.0;
    for (Point x = 0; x < inst.size(); ++x) {
        weights[x] = underlying[x] * std::exp(-state.h[x] * f[x]);
        z += weights[x];
    }
    for (double& w : weights) {
        w /= z;
    }
    const DiscreteDistribution reweighted(std::move(weights));
    Hypothesis weak = minimizer.minimize(inst, reweighted);
    const double r = risk_01(weak, reweighted, inst);

    BoostStep step{.weak = std::move(weak)};
    step.normalizer = z;
    step.weak_risk = r;
    ++state.round;
    step.rate_bound = boost_rate_bound(minimizer.epsilon(), state.round);
    if (r <= 0.0) {
        step.status = StepStatus::PerfectWeakLearner;
        step.eta = std::numeric_limits<double>::infinity();
        state.exact = step.weak;
        step.zero_one_after = risk_01(step.weak, underlying, inst);
        state.history.push_back(std::move(step));
        return state.history.back();
    }
    if (r >= 0.5) {
        throw StalledWeakLearner("weak hypothesis has weighted risk " + std::to_string(r) + " >= 1/2");
    }
    step.eta = 0.5 * std::log(1.0 / r - 1.0);
    state.h = state.h.plus(step.weak, step.eta);
    step.surrogate_after = exp_risk(state.h, inst, underlying);
    step.predicted_after = 2.0 * z * std::sqrt(r * (1.0 - r));
    step.zero_one_after = risk_01(state.h.sign(), underlying, inst);
    state.history.push_back(std::move(step));
    return state.history.back();
}

BoostRun run_boost(const Instance& inst, Minimizer& minimizer, std::size_t rounds) {
    BoostRun run{.state = BoostState{.h = RealHypothesis::zeros(inst.size())}};
    for (std::size_t t = 0; t < rounds && !run.state.exact; ++t) {
        const auto& step = boost_step(run.state, inst, minimizer);
        if (step.zero_one_after > step.rate_bound + kContractionTolerance) {
            run.rate_holds = false;
        }
        if (step.status == StepStatus::Updated &&
            std::abs(step.surrogate_after - step.predicted_after) > kContractionTolerance) {
            run.contraction_holds = false;
        }
    }
    return run;
}

}  // namespace dynbench
