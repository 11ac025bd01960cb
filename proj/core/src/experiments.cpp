#include "dynbench/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dynbench/errors.hpp"
#include "dynbench/hier_engine.hpp"
#include "dynbench/measures.hpp"
#include "dynbench/noise_dynamics.hpp"
#include "dynbench/rng.hpp"

namespace dynbench {

namespace {

Hypothesis random_member(const HypothesisClass& cls, Rng& rng) {
    const std::size_t d = cls.domain_size();
    if (cls.kind() == ClassKind::Complete) {
        std::vector<Label> labels(d);
        for (auto& l : labels) {
            l = rng.coin() ? Label{1} : Label{-1};
        }
        return Hypothesis(std::move(labels));
    }
    const std::size_t max_runs = std::min(d, 2 * cls.interval_budget() + 1);
    const std::size_t runs = 1 + rng.below(max_runs);
    std::vector<std::size_t> cuts(d - 1);
    std::iota(cuts.begin(), cuts.end(), std::size_t{1});
    rng.shuffle(cuts);
    cuts.resize(runs - 1);
    std::sort(cuts.begin(), cuts.end());
    Label current = rng.coin() ? Label{1} : Label{-1};
    std::vector<Label> labels(d);
    std::size_t next = 0;
    for (std::size_t x = 0; x < d; ++x) {
        if (next < cuts.size() && cuts[next] == x) {
            current = static_cast<Label>(-current);
            ++next;
        }
        labels[x] = current;
    }
    return Hypothesis(std::move(labels));
}

std::vector<double> padded(const std::vector<double>& series, std::size_t length) {
    std::vector<double> out = series;
    const double last = out.empty() ? 0.0 : out.back();
    out.resize(length, last);
    return out;
}

RolloutRecord one_rollout(const Instance& inst, MinimizerSpec spec, const DesignSpec& design, std::size_t z_round) {
    RolloutRecord record;
    record.seed = spec.seed;
    Minimizer minimizer(std::move(spec));
    switch (design.kind) {
    case DesignKind::Path:
    case DesignKind::Witness: {
        const PathConfig cfg{design.rounds, design.mixture, design.majority};
        const auto trace = run_path(inst, minimizer, cfg);
        for (const auto& r : trace.rounds) {
            record.series.push_back(r.majority_risk);
        }
        record.final_risk = risk_01(trace.output(), inst.underlying(), inst);
        record.perfect_round = trace.perfect_round;
        if (trace.rounds.size() >= z_round && z_round >= 2) {
            record.z = z_score(trace, inst, z_round);
        }
        break;
    }
    case DesignKind::Hier: {
        const HierConfig cfg{design.depth, design.width, design.mixture, design.majority};
        const auto trace = run_hier(inst, minimizer, cfg);
        const auto groups = trace.top_level();
        const auto& weights = trace.root.majority_weights;
        for (std::size_t j = 1; j <= groups.size(); ++j) {
            std::vector<Hypothesis> prefix(groups.begin(), groups.begin() + static_cast<std::ptrdiff_t>(j));
            std::vector<double> w = weights.size() >= j
                                        ? std::vector<double>(weights.begin(), weights.begin() + static_cast<std::ptrdiff_t>(j))
                                        : std::vector<double>(j, 1.0);
            record.series.push_back(risk_01(majority(EnsembleVote(prefix, w)), inst.underlying(), inst));
        }
        record.final_risk = risk_01(trace.output(), inst.underlying(), inst);
        if (trace.root.early_success) {
            record.perfect_round = trace.root.steps.size() - 1;
        }
        break;
    }
    case DesignKind::Noisy: {
        const auto trace = run_noisy_path(inst, minimizer, design.rounds);
        for (const auto& r : trace.rounds) {
            record.series.push_back(r.majority_risk);
        }
        record.final_risk = record.series.back();
        record.perfect_round = trace.perfect_round;
        break;
    }
    case DesignKind::Boost:
        if (design.loss == BoostLoss::Exponential) {
            const auto run = run_boost(inst, minimizer, design.rounds);
            for (const auto& s : run.state.history) {
                record.series.push_back(s.zero_one_after);
            }
            if (run.state.exact) {
                record.perfect_round = run.state.history.size() - 1;
            }
        } else {
            const auto state = run_hinge(inst, minimizer, design.rounds, design.step);
            for (const auto& s : state.history) {
                record.series.push_back(s.zero_one_after);
            }
        }
        record.final_risk = record.series.empty() ? 0.0 : record.series.back();
        break;
    }
    return record;
}

}  // namespace

Instance generate_instance(const GeneratorSpec& spec) {
    const std::size_t d = spec.dimension;
    if (d == 0) {
        throw InvalidArgument("generated instance needs at least one point");
    }
    Rng rng(spec.seed);
    const FiniteDomain domain(d);

    std::vector<double> base = spec.underlying == GeneratorSpec::Shape::Uniform
                                   ? std::vector<double>(d, 1.0 / static_cast<double>(d))
                                   : rng.simplex(d);
    PointSet noisy;
    if (spec.noisy_points > 0) {
        if (spec.noisy_points >= d) {
            throw InvalidArgument("noisy set must leave at least one clean point");
        }
        if (!(spec.noise_mass > 0.0) || !(spec.noise_mass < 1.0)) {
            throw InvalidArgument("noise mass must lie in (0, 1)");
        }
        std::vector<Point> order(d);
        std::iota(order.begin(), order.end(), Point{0});
        rng.shuffle(order);
        noisy.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(spec.noisy_points));
        std::sort(noisy.begin(), noisy.end());
        std::vector<std::uint8_t> mask(d, 0);
        double on_noise = 0.0;
        for (Point x : noisy) {
            mask[x] = 1;
            on_noise += base[x];
        }
        for (Point x = 0; x < d; ++x) {
            base[x] *= mask[x] ? spec.noise_mass / on_noise : (1.0 - spec.noise_mass) / (1.0 - on_noise);
        }
    }
    DiscreteDistribution underlying(std::move(base));

    std::optional<DiscreteDistribution> initial;
    if (spec.noisy_points > 0 || spec.initial == GeneratorSpec::Initial::Same) {
        initial = underlying;
    } else if (spec.initial == GeneratorSpec::Initial::Uniform) {
        initial = uniform(domain);
    } else {
        initial = DiscreteDistribution(rng.simplex(d));
    }

    HypothesisClass cls = [&] {
        switch (spec.kind) {
        case ClassKind::Complete:
            return HypothesisClass::complete(d);
        case ClassKind::TwoIntervals:
            return HypothesisClass::two_intervals(d);
        case ClassKind::ThreeIntervals:
            return HypothesisClass::three_intervals(d);
        case ClassKind::Explicit:
            break;
        }
        throw InvalidArgument("the generator does not build explicit classes");
    }();
    Hypothesis truth = spec.truth == GeneratorSpec::Truth::Positive ? Hypothesis::constant(d, 1)
                                                                     : random_member(cls, rng);
    return Instance(std::move(underlying), std::move(*initial), std::move(truth), std::move(cls), std::move(noisy));
}

Instance ExperimentConfig::resolve_instance() const {
    if (instance) {
        return *instance;
    }
    if (generator) {
        return generate_instance(*generator);
    }
    throw InvalidArgument("config needs an instance or a generator");
}

void ExperimentConfig::validate() const {
    if (rollouts < 1) {
        throw InvalidArgument("rollout count must be at least 1");
    }
    if (design.kind != DesignKind::Witness && !instance && !generator) {
        throw InvalidArgument("config needs an instance or a generator");
    }
    if (design.kind == DesignKind::Hier && (design.depth < 1 || design.width < 2)) {
        throw InvalidArgument("hierarchical design needs depth >= 1 and width >= 2");
    }
    if (design.kind != DesignKind::Hier && design.rounds < 1) {
        throw InvalidArgument("design needs at least one round");
    }
    minimizer.validate();
}

std::optional<double> z_score(const BenchmarkTrace& trace, const Instance& inst, std::size_t horizon) {
    if (horizon < 2) {
        throw InvalidArgument("z score needs at least two rounds");
    }
    if (trace.rounds.size() < horizon) {
        throw InvalidArgument("trace has fewer rounds than the z horizon");
    }
    const auto& underlying = inst.underlying();
    const PointSet final_errors = error_set(trace.final_majority(), inst);
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < horizon; ++a) {
        for (std::size_t b = 0; b < horizon; ++b) {
            if (a == b) {
                continue;
            }
            const PointSet joint = set_intersection(trace.rounds[a].errors, trace.rounds[b].errors);
            const double denominator = prob_of(underlying, joint);
            if (!(denominator > 0.0)) {
                continue;
            }
            total += prob_of(underlying, set_intersection(joint, final_errors)) / denominator;
            ++pairs;
        }
    }
    if (pairs == 0) {
        return std::nullopt;
    }
    return total / static_cast<double>(pairs);
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw InvalidArgument("pearson needs two samples of equal length >= 2");
    }
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) {
        throw DegenerateVariance("pearson correlation of a constant sample");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

void aggregate(RolloutSummary& summary) {
    std::size_t length = 0;
    for (const auto& r : summary.rollouts) {
        length = std::max(length, r.series.size());
    }
    summary.mean.assign(length, 0.0);
    summary.stdev.assign(length, 0.0);
    if (summary.rollouts.empty()) {
        return;
    }
    std::vector<std::vector<double>> rows;
    for (const auto& r : summary.rollouts) {
        rows.push_back(padded(r.series, length));
    }
    const double n = static_cast<double>(rows.size());
    for (std::size_t t = 0; t < length; ++t) {
        double sum = 0.0;
        for (const auto& row : rows) {
            sum += row[t];
        }
        const double mean = sum / n;
        double sq = 0.0;
        for (const auto& row : rows) {
            sq += (row[t] - mean) * (row[t] - mean);
        }
        summary.mean[t] = mean;
        summary.stdev[t] = rows.size() > 1 ? std::sqrt(sq / (n - 1.0)) : 0.0;
    }

    std::vector<double> zs;
    std::vector<double> finals;
    for (const auto& r : summary.rollouts) {
        if (r.z) {
            zs.push_back(*r.z);
            finals.push_back(r.final_risk);
        }
    }
    summary.correlation.reset();
    if (zs.size() >= 2) {
        try {
            summary.correlation = pearson(zs, finals);
        } catch (const DegenerateVariance&) {
        }
    }
}

RolloutSummary run_rollouts(const Instance& inst, const MinimizerSpec& spec, const DesignSpec& design,
                            std::size_t count, std::size_t z_round) {
    if (count < 1) {
        throw InvalidArgument("rollout count must be at least 1");
    }
    RolloutSummary summary;
    summary.z_round = z_round;
    for (std::size_t i = 0; i < count; ++i) {
        MinimizerSpec seeded = spec;
        seeded.seed = spec.seed + i;
        auto record = one_rollout(inst, std::move(seeded), design, z_round);
        record.index = i;
        summary.rollouts.push_back(std::move(record));
    }
    aggregate(summary);
    return summary;
}

RolloutSummary run_rollouts(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto& design = cfg.design;
    if (design.kind != DesignKind::Witness) {
        return run_rollouts(cfg.resolve_instance(), cfg.minimizer, design, cfg.rollouts, cfg.z_round);
    }
    const auto cls = design.intervals ? WitnessClass::Intervals : WitnessClass::Explicit;
    if (design.witness == WitnessKind::Path) {
        const auto w = build_path_witness(design.witness_epsilon, design.rounds, std::nullopt, design.mixture, cls);
        return run_rollouts(w.instance, w.minimizer, design, cfg.rollouts, cfg.z_round);
    }
    const auto w = build_hier_witness(design.witness_epsilon, std::nullopt, std::nullopt, cls);
    DesignSpec hier = design;
    hier.kind = DesignKind::Hier;
    hier.depth = 2;
    hier.width = 3;
    return run_rollouts(w.instance, w.minimizer, hier, cfg.rollouts, cfg.z_round);
}

}  // namespace dynbench
