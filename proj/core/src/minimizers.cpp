#include "dynbench/minimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "dynbench/errors.hpp"
#include "dynbench/measures.hpp"

namespace dynbench {

namespace {

// Risks that agree to this many digits are treated as ties.
constexpr double kTieTolerance = 1e-12;

}  // namespace

InfeasibleScript::InfeasibleScript(std::size_t round, double achieved, double minimum, double epsilon)
    : ContractViolation("scripted hypothesis at call " + std::to_string(round) + " has risk " +
                        std::to_string(achieved) + " above minimum " + std::to_string(minimum) + " + eps " +
                        std::to_string(epsilon)),
      round_(round),
      achieved_(achieved),
      minimum_(minimum) {}

MinimizerSpec MinimizerSpec::perfect() {
    return MinimizerSpec{};
}

MinimizerSpec MinimizerSpec::random(double epsilon, std::uint64_t seed) {
    MinimizerSpec spec;
    spec.epsilon = epsilon;
    spec.mode = MinimizerMode::RandomApprox;
    spec.seed = seed;
    return spec;
}

MinimizerSpec MinimizerSpec::adversarial(double epsilon, PointSet target) {
    MinimizerSpec spec;
    spec.epsilon = epsilon;
    spec.mode = MinimizerMode::AdversarialApprox;
    spec.target = std::move(target);
    return spec;
}

MinimizerSpec MinimizerSpec::scripted(double epsilon, std::vector<Hypothesis> script) {
    MinimizerSpec spec;
    spec.epsilon = epsilon;
    spec.mode = MinimizerMode::Scripted;
    spec.script = std::move(script);
    return spec;
}

void MinimizerSpec::validate() const {
    if (!(epsilon >= 0.0) || !(epsilon < 1.0)) {
        throw InvalidArgument("minimizer epsilon must lie in [0, 1)");
    }
    if (mode == MinimizerMode::Scripted && script.empty()) {
        throw InvalidArgument("scripted minimizer needs a non-empty sequence");
    }
    if (!std::is_sorted(target.begin(), target.end()) ||
        std::adjacent_find(target.begin(), target.end()) != target.end()) {
        throw InvalidArgument("adversarial target must be sorted and duplicate-free");
    }
}

ConsistencyReport verify_eps_consistency(const DiscreteDistribution& p, const Hypothesis& h, const Instance& inst,
                                         double epsilon) {
    ConsistencyReport report;
    report.risk = risk_01(h, p, inst);
    report.minimum = min_risk(p, inst);
    report.epsilon = epsilon;
    report.consistent = inst.hypotheses().contains(h) && report.risk <= report.minimum + epsilon + kConsistencySlack;
    return report;
}

std::vector<Hypothesis> eps_feasible_set(const Instance& inst, const DiscreteDistribution& p, double epsilon) {
    const double bound = min_risk(p, inst) + epsilon + kConsistencySlack;
    std::vector<Hypothesis> out;
    inst.hypotheses().for_each([&](std::uint64_t, const Hypothesis& h) {
        if (risk_01(h, p, inst) <= bound) {
            out.push_back(h);
        }
    });
    return out;
}

Minimizer::Minimizer(MinimizerSpec spec) : spec_(std::move(spec)), rng_(spec_.seed) {
    spec_.validate();
}

Hypothesis Minimizer::minimize(const Instance& inst, const DiscreteDistribution& p) {
    if (p.size() != inst.size()) {
        throw InvalidArgument("distribution and instance live on different domains");
    }
    Hypothesis h = [&] {
        switch (spec_.mode) {
        case MinimizerMode::Perfect:
            return perfect(inst, p);
        case MinimizerMode::RandomApprox:
            return random_approx(inst, p);
        case MinimizerMode::AdversarialApprox:
            return adversarial(inst, p);
        case MinimizerMode::Scripted:
            return scripted(inst, p);
        }
        throw InvalidArgument("unknown minimizer mode");
    }();
    ++calls_;
    const auto report = verify_eps_consistency(p, h, inst, spec_.epsilon);
    if (!report.consistent) {
        throw OracleContractViolation("minimizer output violates the eps contract at call " +
                                      std::to_string(calls_ - 1));
    }
    return h;
}

Hypothesis Minimizer::perfect(const Instance& inst, const DiscreteDistribution& p) const {
    const auto& cls = inst.hypotheses();
    if (cls.kind() == ClassKind::Complete) {
        // Lowest-index minimizer: agree with f where it is charged, +1 elsewhere.
        const auto& f = inst.truth();
        std::vector<Label> labels(inst.size(), Label{1});
        for (Point x = 0; x < inst.size(); ++x) {
            if (p[x] > 0.0 && !inst.is_noisy(x)) {
                labels[x] = f[x];
            }
        }
        return Hypothesis(std::move(labels));
    }
    double best = std::numeric_limits<double>::infinity();
    cls.for_each([&](std::uint64_t, const Hypothesis& h) { best = std::min(best, risk_01(h, p, inst)); });
    std::optional<Hypothesis> chosen;
    cls.for_each([&](std::uint64_t, const Hypothesis& h) {
        if (!chosen && risk_01(h, p, inst) <= best + kTieTolerance) {
            chosen = h;
        }
    });
    return *chosen;
}

Hypothesis Minimizer::random_approx(const Instance& inst, const DiscreteDistribution& p) {
    const auto& cls = inst.hypotheses();
    if (cls.kind() == ClassKind::Complete) {
        const auto& f = inst.truth();
        std::vector<Point> order(inst.size());
        std::iota(order.begin(), order.end(), Point{0});
        rng_.shuffle(order);
        std::vector<Label> labels(f.labels().begin(), f.labels().end());
        double flipped_mass = 0.0;
        for (Point x : order) {
            if (inst.is_noisy(x) || p[x] == 0.0) {
                if (rng_.coin()) {
                    labels[x] = static_cast<Label>(-labels[x]);
                }
            } else if (flipped_mass + p[x] <= spec_.epsilon) {
                labels[x] = static_cast<Label>(-labels[x]);
                flipped_mass += p[x];
            }
        }
        return Hypothesis(std::move(labels));
    }
    auto feasible = eps_feasible_set(inst, p, spec_.epsilon);
    return feasible[rng_.below(feasible.size())];
}

Hypothesis Minimizer::adversarial(const Instance& inst, const DiscreteDistribution& p) const {
    const auto& underlying = inst.underlying();
    const double bound = min_risk(p, inst) + spec_.epsilon + kConsistencySlack;
    std::optional<Hypothesis> chosen;
    double best_target = -1.0;
    double best_total = -1.0;
    inst.hypotheses().for_each([&](std::uint64_t, const Hypothesis& h) {
        if (risk_01(h, p, inst) > bound) {
            return;
        }
        const auto errors = error_set(h, inst);
        const double on_target = prob_of(underlying, set_intersection(errors, spec_.target));
        const double total = prob_of(underlying, errors);
        const bool better = on_target > best_target + kTieTolerance ||
                            (on_target >= best_target - kTieTolerance && total > best_total + kTieTolerance);
        if (better) {
            chosen = h;
            best_target = on_target;
            best_total = total;
        }
    });
    return *chosen;
}

Hypothesis Minimizer::scripted(const Instance& inst, const DiscreteDistribution& p) {
    if (calls_ >= spec_.script.size()) {
        throw InvalidArgument("scripted minimizer exhausted after " + std::to_string(spec_.script.size()) +
                              " calls");
    }
    const Hypothesis& h = spec_.script[calls_];
    const auto report = verify_eps_consistency(p, h, inst, spec_.epsilon);
    if (!report.consistent) {
        throw InfeasibleScript(calls_, report.risk, report.minimum, spec_.epsilon);
    }
    return h;
}

}  // namespace dynbench
