#include "dynbench/path_engine.hpp"

#include <cmath>

#include "dynbench/errors.hpp"
#include "dynbench/measures.hpp"
#include "dynbench/rng.hpp"

namespace dynbench {

WeightPolicy WeightPolicy::explicit_weights(std::vector<std::vector<double>> weights) {
    WeightPolicy policy;
    policy.kind = Kind::Explicit;
    policy.weights = std::move(weights);
    return policy;
}

WeightPolicy WeightPolicy::random_simplex(std::uint64_t seed) {
    WeightPolicy policy;
    policy.kind = Kind::RandomSimplex;
    policy.seed = seed;
    return policy;
}

std::vector<std::vector<double>> mixture_schedule(const WeightPolicy& policy, std::size_t rounds) {
    std::vector<std::vector<double>> schedule;
    if (rounds < 2) {
        return schedule;
    }
    Rng rng(policy.seed);
    for (std::size_t t = 1; t < rounds; ++t) {
        switch (policy.kind) {
        case WeightPolicy::Kind::Uniform:
            schedule.emplace_back(t + 1, 1.0 / static_cast<double>(t + 1));
            break;
        case WeightPolicy::Kind::RandomSimplex:
            schedule.push_back(rng.simplex(t + 1));
            break;
        case WeightPolicy::Kind::Explicit:
            if (policy.weights.size() < t) {
                throw InvalidArgument("explicit mixture schedule is shorter than the run");
            }
            if (policy.weights[t - 1].size() != t + 1) {
                throw InvalidArgument("explicit mixture weights for round " + std::to_string(t) + " need " +
                                      std::to_string(t + 1) + " entries");
            }
            validate_weights(policy.weights[t - 1]);
            schedule.push_back(policy.weights[t - 1]);
            break;
        }
    }
    return schedule;
}

std::vector<double> majority_schedule(const WeightPolicy& policy, std::size_t count) {
    switch (policy.kind) {
    case WeightPolicy::Kind::Uniform:
        return std::vector<double>(count, 1.0);
    case WeightPolicy::Kind::RandomSimplex: {
        Rng rng(policy.seed);
        return rng.simplex(count);
    }
    case WeightPolicy::Kind::Explicit:
        if (policy.weights.empty() || policy.weights.front().size() < count) {
            throw InvalidArgument("explicit majority weights are shorter than the run");
        }
        for (double w : policy.weights.front()) {
            if (!(w >= 0.0) || !std::isfinite(w)) {
                throw InvalidArgument("majority weights must be finite and non-negative");
            }
        }
        return {policy.weights.front().begin(), policy.weights.front().begin() + static_cast<std::ptrdiff_t>(count)};
    }
    return {};
}

std::vector<Hypothesis> BenchmarkTrace::classifiers() const {
    std::vector<Hypothesis> out;
    out.reserve(rounds.size());
    for (const auto& r : rounds) {
        out.push_back(r.classifier);
    }
    return out;
}

Hypothesis BenchmarkTrace::final_majority() const {
    if (rounds.empty()) {
        throw InvalidArgument("empty trace has no majority");
    }
    std::vector<double> weights(majority_weights.begin(),
                                majority_weights.begin() + static_cast<std::ptrdiff_t>(rounds.size()));
    return majority(EnsembleVote(classifiers(), std::move(weights)));
}

Hypothesis BenchmarkTrace::output() const {
    if (perfect_round) {
        return rounds[*perfect_round].classifier;
    }
    return final_majority();
}

BenchmarkTrace run_path(const Instance& inst, Minimizer& minimizer, const PathConfig& cfg) {
    if (!inst.realizable()) {
        throw InvalidArgument("path engine runs on realizable instances; use the noisy engine");
    }
    if (cfg.rounds == 0) {
        throw InvalidArgument("path benchmark needs at least one round");
    }
    const auto schedule = mixture_schedule(cfg.mixture, cfg.rounds);
    const auto vote_weights = majority_schedule(cfg.majority, cfg.rounds);
    const auto& underlying = inst.underlying();

    BenchmarkTrace trace;
    trace.configured_rounds = cfg.rounds;
    trace.epsilon = minimizer.epsilon();
    trace.uniform_mixture = cfg.mixture.is_uniform();
    trace.majority_weights = vote_weights;

    std::vector<DiscreteDistribution> components{inst.initial()};
    std::vector<Hypothesis> classifiers;
    for (std::size_t t = 0; t < cfg.rounds; ++t) {
        std::vector<double> weights = t == 0 ? std::vector<double>{1.0} : schedule[t - 1];
        DiscreteDistribution current = t == 0 ? inst.initial() : mix(components, weights);

        Hypothesis h = minimizer.minimize(inst, current);
        PointSet errors = error_set(h, inst);
        classifiers.push_back(h);

        std::vector<double> prefix(vote_weights.begin(), vote_weights.begin() + static_cast<std::ptrdiff_t>(t + 1));
        PathRound round{
            .distribution = current,
            .weights = std::move(weights),
            .classifier = h,
            .errors = errors,
            .risk_on_distribution = risk_01(h, current, inst),
            .minimum_on_distribution = min_risk(current, inst),
            .risk_on_underlying = prob_of(underlying, errors),
            .majority_risk = risk_01(majority(EnsembleVote(classifiers, std::move(prefix))), underlying, inst),
        };
        trace.rounds.push_back(std::move(round));

        if (!(prob_of(underlying, errors) > 0.0)) {
            trace.perfect_round = t;
            break;
        }
        components.push_back(condition(underlying, errors));
        trace.error_distributions.push_back(components.back());
    }
    return trace;
}

bool check_lemma1(const BenchmarkTrace& trace, double alpha) {
    if (!(alpha > 0.0)) {
        throw InvalidArgument("alpha must be positive");
    }
    std::size_t bad = 0;
    for (const auto& r : trace.rounds) {
        if (r.risk_on_underlying > alpha) {
            ++bad;
        }
    }
    return static_cast<double>(bad) <= 1.0 / alpha;
}

bool check_corollary_random_pick(const BenchmarkTrace& trace, double alpha, double delta) {
    if (!(alpha > 0.0) || !(delta > 0.0)) {
        throw InvalidArgument("alpha and delta must be positive");
    }
    const double horizon = static_cast<double>(trace.configured_rounds);
    if (horizon * delta * alpha < 1.0 - 1e-12) {
        throw InvalidArgument("random-pick guarantee needs at least 1/(delta alpha) rounds");
    }
    std::size_t bad = 0;
    for (const auto& r : trace.rounds) {
        if (r.risk_on_underlying > alpha) {
            ++bad;
        }
    }
    return static_cast<double>(bad) / horizon <= delta;
}

double thm1_bound(double epsilon, double distance) {
    return 11.0 * epsilon * epsilon + 8.0 * epsilon * distance;
}

BoundReport check_thm1_bound(const Instance& inst, const BenchmarkTrace& trace) {
    if (!trace.uniform_mixture) {
        throw InvalidArgument("three-round bound assumes uniform mixture weights");
    }
    BoundReport report;
    if (trace.rounds.size() >= 3) {
        const std::vector<Hypothesis> first{trace.rounds[0].classifier, trace.rounds[1].classifier,
                                            trace.rounds[2].classifier};
        report.risk = risk_01(majority(first), inst.underlying(), inst);
    } else if (trace.perfect_round) {
        // The benchmark ended with a zero-risk classifier before round 3.
        report.risk = trace.rounds.back().risk_on_underlying;
    } else {
        throw InvalidArgument("three-round bound needs a trace with at least three rounds");
    }
    report.distance = hdh_distance(inst.initial(), inst.underlying(), inst.hypotheses());
    report.bound = thm1_bound(trace.epsilon, report.distance);
    report.holds = report.risk <= report.bound + 1e-12;
    return report;
}

}  // namespace dynbench
