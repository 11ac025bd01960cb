#include "dynbench/hier_engine.hpp"

#include "dynbench/errors.hpp"
#include "dynbench/measures.hpp"
#include "dynbench/rng.hpp"

namespace dynbench {

namespace {

class HierRunner {
public:
    HierRunner(const Instance& inst, Minimizer& minimizer, const HierConfig& cfg)
        : inst_(inst),
          minimizer_(minimizer),
          cfg_(cfg),
          mixture_rng_(cfg.mixture.seed),
          majority_rng_(cfg.majority.seed) {}

    HierTrace run() {
        trace_.depth = cfg_.depth;
        trace_.width = cfg_.width;
        trace_.epsilon = minimizer_.epsilon();
        trace_.uniform_mixture = cfg_.mixture.is_uniform();
        trace_.uniform_majority = cfg_.majority.is_uniform();
        trace_.atoms.push_back(HierAtom{"D0", inst_.initial(), {}, true});
        trace_.root = node(cfg_.depth, {0}, "r");
        return std::move(trace_);
    }

private:
    HierNode node(std::size_t depth, const std::vector<std::size_t>& inherited, const std::string& path) {
        std::vector<std::size_t> visible = inherited;
        std::vector<HierStep> steps;
        std::vector<Hypothesis> outputs;
        const auto& underlying = inst_.underlying();

        for (std::size_t t = 0; t < cfg_.width; ++t) {
            HierStep step{.atoms = visible, .classifier = Hypothesis::constant(inst_.size(), 1)};
            const std::string step_path = path + "." + std::to_string(t);
            if (depth == 1) {
                step.leaf = leaf_call(path, t, visible);
                step.classifier = trace_.leaves[*step.leaf].classifier;
            } else {
                step.subtree.push_back(node(depth - 1, visible, step_path));
                step.classifier = step.subtree.front().output;
            }
            step.errors = error_set(step.classifier, inst_);
            step.risk_on_underlying = prob_of(underlying, step.errors);
            outputs.push_back(step.classifier);

            if (!(step.risk_on_underlying > 0.0)) {
                Hypothesis winner = step.classifier;
                steps.push_back(std::move(step));
                return HierNode{path, depth, inherited, std::move(steps), {}, std::move(winner), true};
            }
            if (t + 1 < cfg_.width) {
                trace_.atoms.push_back(HierAtom{"E(" + path + ":" + std::to_string(t) + ")",
                                                condition(underlying, step.errors), step.errors, false});
                step.error_atom = trace_.atoms.size() - 1;
                visible.push_back(*step.error_atom);
            }
            steps.push_back(std::move(step));
        }

        auto weights = vote_weights();
        Hypothesis output = majority(EnsembleVote(outputs, weights));
        return HierNode{path, depth, inherited, std::move(steps), std::move(weights), std::move(output), false};
    }

    std::size_t leaf_call(const std::string& path, std::size_t step, const std::vector<std::size_t>& atoms) {
        auto weights = mixture_weights(atoms.size());
        std::vector<DiscreteDistribution> components;
        components.reserve(atoms.size());
        for (auto id : atoms) {
            components.push_back(trace_.atoms[id].distribution);
        }
        DiscreteDistribution current = atoms.size() == 1 ? components.front() : mix(components, weights);
        Hypothesis h = minimizer_.minimize(inst_, current);
        LeafCall call{
            .node_path = path,
            .step = step,
            .atoms = atoms,
            .weights = std::move(weights),
            .distribution = current,
            .classifier = h,
            .risk_on_distribution = risk_01(h, current, inst_),
            .minimum_on_distribution = min_risk(current, inst_),
            .risk_on_underlying = risk_01(h, inst_.underlying(), inst_),
        };
        trace_.leaves.push_back(std::move(call));
        return trace_.leaves.size() - 1;
    }

    std::vector<double> mixture_weights(std::size_t count) {
        const std::size_t call = trace_.leaves.size();
        switch (cfg_.mixture.kind) {
        case WeightPolicy::Kind::Uniform:
            return std::vector<double>(count, 1.0 / static_cast<double>(count));
        case WeightPolicy::Kind::RandomSimplex:
            // No draw for a single atom, matching the path engine's round 0.
            return count == 1 ? std::vector<double>{1.0} : mixture_rng_.simplex(count);
        case WeightPolicy::Kind::Explicit: {
            if (call >= cfg_.mixture.weights.size()) {
                throw InvalidArgument("explicit hierarchical mixture schedule is shorter than the run");
            }
            const auto& w = cfg_.mixture.weights[call];
            if (w.size() != count) {
                throw InvalidArgument("explicit mixture weights for leaf call " + std::to_string(call) + " need " +
                                      std::to_string(count) + " entries");
            }
            validate_weights(w);
            return w;
        }
        }
        return {};
    }

    std::vector<double> vote_weights() {
        switch (cfg_.majority.kind) {
        case WeightPolicy::Kind::Uniform:
            return std::vector<double>(cfg_.width, 1.0);
        case WeightPolicy::Kind::RandomSimplex:
            return majority_rng_.simplex(cfg_.width);
        case WeightPolicy::Kind::Explicit:
            return majority_schedule(cfg_.majority, cfg_.width);
        }
        return {};
    }

    const Instance& inst_;
    Minimizer& minimizer_;
    const HierConfig& cfg_;
    Rng mixture_rng_;
    Rng majority_rng_;
    HierTrace trace_{.root = HierNode{.output = Hypothesis::constant(1, 1)}};
};

}  // namespace

std::uint64_t HierConfig::annotator_rounds() const {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < depth; ++i) {
        total *= width;
    }
    return total;
}

std::vector<Hypothesis> HierTrace::top_level() const {
    std::vector<Hypothesis> out;
    for (const auto& step : root.steps) {
        out.push_back(step.classifier);
    }
    return out;
}

HierTrace run_hier(const Instance& inst, Minimizer& minimizer, const HierConfig& cfg) {
    if (!inst.realizable()) {
        throw InvalidArgument("hierarchical engine runs on realizable instances");
    }
    if (cfg.depth < 1) {
        throw InvalidArgument("hierarchical depth must be at least 1");
    }
    if (cfg.width < 1) {
        throw InvalidArgument("hierarchical width must be at least 1");
    }
    return HierRunner(inst, minimizer, cfg).run();
}

double thm4_bound(double epsilon, double distance) {
    return 543.0 * epsilon * epsilon * epsilon + 300.0 * epsilon * epsilon * distance;
}

BoundReport check_thm4_bound(const Instance& inst, const HierTrace& trace) {
    if (trace.depth != 2 || trace.width != 3) {
        throw InvalidArgument("hierarchical bound is stated for depth 2, width 3");
    }
    if (!trace.uniform_mixture || !trace.uniform_majority) {
        throw InvalidArgument("hierarchical bound assumes uniform mixture and majority weights");
    }
    BoundReport report;
    report.risk = risk_01(trace.output(), inst.underlying(), inst);
    report.distance = hdh_distance(inst.initial(), inst.underlying(), inst.hypotheses());
    report.bound = thm4_bound(trace.epsilon, report.distance);
    report.holds = report.risk <= report.bound + 1e-12;
    return report;
}

}  // namespace dynbench
