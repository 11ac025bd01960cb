#include "dynbench/noise_dynamics.hpp"

#include <algorithm>

#include "dynbench/errors.hpp"
#include "dynbench/measures.hpp"
#include "dynbench/path_engine.hpp"

namespace dynbench {

namespace {

constexpr double kBoundSlack = 1e-12;

NoisyTrace from_path(const BenchmarkTrace& path) {
    NoisyTrace out;
    out.epsilon = path.epsilon;
    out.perfect_round = path.perfect_round;
    out.warnings.push_back("noisy set is empty; ran the realizable path engine");
    for (std::size_t t = 0; t < path.rounds.size(); ++t) {
        const auto& r = path.rounds[t];
        NoisyRound round{
            .distribution = r.distribution,
            .weights = r.weights,
            .classifier = r.classifier,
            .errors = r.errors,
            .realizable_mass = r.risk_on_distribution,
            .realizable_risk = r.risk_on_distribution,
            .risk_on_distribution = r.risk_on_distribution,
            .risk_on_underlying = r.risk_on_underlying,
            .majority_risk = r.majority_risk,
        };
        if (t < path.error_distributions.size()) {
            round.error_distribution = path.error_distributions[t];
        }
        out.rounds.push_back(std::move(round));
    }
    return out;
}

}  // namespace

bool NoisyTrace::bounds_hold() const {
    return std::all_of(rounds.begin(), rounds.end(),
                       [](const NoisyRound& r) { return !r.bound || r.noise_share >= *r.bound - kBoundSlack; });
}

bool NoisyTrace::clean_constraint_holds() const {
    return std::all_of(rounds.begin(), rounds.end(),
                       [&](const NoisyRound& r) { return r.realizable_mass <= epsilon + kConsistencySlack; });
}

double delta_lower_bound(std::size_t t, double epsilon, double delta) {
    if (t < 1) {
        throw InvalidArgument("concentration bound starts at round 1");
    }
    if (!(delta > epsilon)) {
        throw InvalidArgument("concentration bound needs delta > eps");
    }
    return 1.0 / (2.0 * (1.0 + 8.0 * (epsilon / delta) * static_cast<double>(t)));
}

double delta1_lower_bound(double epsilon, double delta) {
    if (!(delta > epsilon)) {
        throw InvalidArgument("concentration bound needs delta > eps");
    }
    return delta / 2.0 + 0.5 / (1.0 + 2.0 * epsilon / delta);
}

NoisyTrace run_noisy_path(const Instance& inst, Minimizer& minimizer, std::size_t rounds) {
    if (rounds == 0) {
        throw InvalidArgument("noisy benchmark needs at least one round");
    }
    if (inst.realizable()) {
        PathConfig cfg;
        cfg.rounds = rounds;
        return from_path(run_path(inst, minimizer, cfg));
    }

    const auto& underlying = inst.underlying();
    const auto& noisy = inst.noisy_set();
    NoisyTrace trace;
    trace.epsilon = minimizer.epsilon();
    trace.delta = inst.noise_mass();
    trace.delta_dominant = trace.delta > trace.epsilon;
    if (!trace.delta_dominant) {
        trace.warnings.push_back("DeltaNotDominant: delta <= eps, concentration bounds skipped");
    }
    const bool starts_at_delta = prob_of(inst.initial(), noisy) >= trace.delta - kBoundSlack;
    if (trace.delta_dominant && !starts_at_delta) {
        trace.warnings.push_back("initial distribution holds less noise than D, concentration bounds skipped");
    }
    trace.bounds_checked = trace.delta_dominant && starts_at_delta;
    const double horizon = trace.delta_dominant ? trace.delta / trace.epsilon : 0.0;

    std::vector<DiscreteDistribution> components{inst.initial()};
    std::vector<Hypothesis> classifiers;
    for (std::size_t t = 0; t < rounds; ++t) {
        std::vector<double> weights(t + 1, 1.0 / static_cast<double>(t + 1));
        DiscreteDistribution current = t == 0 ? inst.initial() : mix(components, weights);
        Hypothesis h = minimizer.minimize(inst, current);
        PointSet errors = error_set(h, inst);
        classifiers.push_back(h);

        const double share = prob_of(current, noisy);
        const double clean_mass = prob_of(current, errors);
        NoisyRound round{
            .distribution = current,
            .weights = std::move(weights),
            .classifier = h,
            .errors = errors,
            .noise_share = share,
            .realizable_mass = clean_mass,
            .realizable_risk = share < 1.0 ? clean_mass / (1.0 - share) : 0.0,
            .noisy_risk = 0.5 * share,
            .risk_on_distribution = risk_01(h, current, inst),
            .risk_on_underlying = risk_01(h, underlying, inst),
            .majority_risk = risk_01(majority(classifiers), underlying, inst),
        };
        if (trace.bounds_checked && t >= 1 && static_cast<double>(t) <= horizon + kBoundSlack) {
            round.bound = t == 1 ? std::max(delta_lower_bound(1, trace.epsilon, trace.delta),
                                            delta1_lower_bound(trace.epsilon, trace.delta))
                                 : delta_lower_bound(t, trace.epsilon, trace.delta);
        }

        std::vector<double> mass(inst.size(), 0.0);
        double total = 0.0;
        for (Point x = 0; x < inst.size(); ++x) {
            if (inst.is_noisy(x)) {
                mass[x] = 0.5 * underlying[x];
            }
        }
        for (Point x : errors) {
            mass[x] = underlying[x];
        }
        for (double m : mass) {
            total += m;
        }
        if (!(total > 0.0)) {
            trace.rounds.push_back(std::move(round));
            trace.perfect_round = t;
            break;
        }
        double on_noise = 0.0;
        for (Point x : noisy) {
            on_noise += mass[x];
        }
        for (double& m : mass) {
            m /= total;
        }
        round.error_noise_weight = on_noise / total;
        round.error_distribution = DiscreteDistribution(std::move(mass));
        components.push_back(*round.error_distribution);
        trace.rounds.push_back(std::move(round));
    }
    return trace;
}

}  // namespace dynbench
