#include "dynbench/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dynbench/errors.hpp"
#include "dynbench/measures.hpp"

namespace dynbench {

namespace {

constexpr double kAgreement = 1e-9;
constexpr double kExact = 1e-12;

// 1-based closed interval [lo, hi] as 0-based points.
PointSet closed(std::size_t lo, std::size_t hi) {
    PointSet out;
    for (std::size_t i = lo; i <= hi; ++i) {
        out.push_back(i - 1);
    }
    return out;
}

// 1-based half-open interval (lo, hi] as 0-based points.
PointSet half_open(std::size_t lo, std::size_t hi) {
    PointSet out;
    for (std::size_t i = lo + 1; i <= hi; ++i) {
        out.push_back(i - 1);
    }
    return out;
}

PointSet join(std::initializer_list<PointSet> parts) {
    PointSet out;
    for (const auto& p : parts) {
        out = set_union(out, p);
    }
    return out;
}

void check_ascending(const DiscreteDistribution& p, std::size_t dimension) {
    if (p.size() != dimension) {
        throw InvalidArgument("initial distribution must have " + std::to_string(dimension) + " points");
    }
    for (std::size_t x = 1; x < p.size(); ++x) {
        if (p[x] < p[x - 1]) {
            throw InvalidArgument("initial distribution must be ascending in index order");
        }
    }
}

std::vector<Hypothesis> flips_of(const Hypothesis& truth, const std::vector<PointSet>& blocks) {
    std::vector<Hypothesis> out;
    out.reserve(blocks.size());
    for (const auto& b : blocks) {
        out.push_back(truth.flipped(b));
    }
    return out;
}

HypothesisClass witness_class(WitnessClass cls, WitnessKind kind, std::size_t dimension, const Hypothesis& truth,
                              const std::vector<Hypothesis>& distinct) {
    if (cls == WitnessClass::Explicit) {
        std::vector<Hypothesis> members{truth};
        members.insert(members.end(), distinct.begin(), distinct.end());
        return HypothesisClass::explicit_list(std::move(members));
    }
    auto hc = kind == WitnessKind::Path ? HypothesisClass::two_intervals(dimension)
                                        : HypothesisClass::three_intervals(dimension);
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        if (!hc.contains(distinct[i])) {
            throw MembershipViolation("scripted hypothesis " + std::to_string(i) + " has " +
                                      std::to_string(distinct[i].run_count()) + " runs, outside the interval class");
        }
    }
    return hc;
}

// Pr_P(block) for D0, Pr_D(block | source) for an error atom.
double atom_mass(const DiscreteDistribution& initial, const DiscreteDistribution& underlying, const PointSet* source,
                 const PointSet& block) {
    if (source == nullptr) {
        return prob_of(initial, block);
    }
    return prob_of(underlying, set_intersection(block, *source)) / prob_of(underlying, *source);
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::size_t inverse_of(double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon <= 0.5)) {
        throw InvalidEpsilon("witness epsilon must lie in (0, 1/2]");
    }
    const double inv = 1.0 / epsilon;
    const double n = std::round(inv);
    if (std::abs(inv - n) > 1e-9 * n) {
        throw InvalidEpsilon("1/eps must be a natural number, got 1/" + format_number(inv));
    }
    return static_cast<std::size_t>(n);
}

PathWitness build_path_witness(double epsilon, std::size_t rounds, std::optional<DiscreteDistribution> initial,
                               const WeightPolicy& mixture, WitnessClass cls) {
    const std::size_t n = inverse_of(epsilon);
    if (rounds == 0) {
        throw InvalidArgument("witness needs at least one round");
    }
    const std::size_t d = 8 * n * n;
    const std::size_t kp = 2 * n;
    const std::size_t horizon = 2 * n;
    if (initial) {
        check_ascending(*initial, d);
    }
    DiscreteDistribution underlying = uniform(FiniteDomain(d));
    DiscreteDistribution start = initial ? *initial : underlying;

    std::vector<PointSet> base{closed(1, kp)};
    for (std::size_t t = 1; t < horizon; ++t) {
        base.push_back(join({closed(1, 1), half_open(kp + (t - 1) * (kp - 1), kp + t * (kp - 1))}));
    }

    const auto schedule = mixture_schedule(mixture, rounds);
    std::vector<PointSet> played;
    std::vector<std::size_t> assignment;
    std::vector<std::vector<double>> tallies;
    for (std::size_t t = 0; t < rounds; ++t) {
        if (t < horizon) {
            played.push_back(base[t]);
            continue;
        }
        const auto& w = schedule[t - 1];  // (w_{t,0}, wbar_{t,0}, ..., wbar_{t,t-1})
        std::vector<double> v(horizon);
        for (std::size_t tau = 0; tau < horizon; ++tau) {
            v[tau] = w[tau + 1];
        }
        for (std::size_t tp = horizon; tp < t; ++tp) {
            v[assignment[tp - horizon]] += w[tp + 1];
        }
        const auto phi = static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
        assignment.push_back(phi);
        tallies.push_back(std::move(v));
        played.push_back(base[phi]);
    }

    const Hypothesis truth = Hypothesis::constant(d, 1);
    const std::size_t distinct_count = std::min(rounds, horizon);
    const auto distinct = flips_of(truth, {base.begin(), base.begin() + static_cast<std::ptrdiff_t>(distinct_count)});
    auto hc = witness_class(cls, WitnessKind::Path, d, truth, distinct);

    PathWitness w{
        .epsilon = epsilon,
        .inverse_epsilon = n,
        .dimension = d,
        .common_size = 1,
        .block_size = kp,
        .horizon = horizon,
        .rounds = rounds,
        .common = closed(1, 1),
        .blocks = played,
        .assignment = std::move(assignment),
        .tallies = std::move(tallies),
        .mixture = schedule,
        .instance = Instance(underlying, start, truth, std::move(hc)),
        .minimizer = MinimizerSpec::scripted(epsilon, flips_of(truth, played)),
        .claimed_risk = 0.0,
    };
    w.claimed_risk = prob_of(w.instance.underlying(), w.common);
    return w;
}

HierWitness build_hier_witness(double epsilon, std::optional<std::size_t> dimension,
                               std::optional<DiscreteDistribution> initial, WitnessClass cls) {
    const std::size_t n = inverse_of(epsilon);
    const std::size_t d = dimension.value_or(2 * n * n * n);
    if (d + 1 < n * n * n + 2 * n * n) {
        throw InvalidArgument("hierarchical witness needs d >= 1/eps^3 + 2/eps^2 - 1 = " +
                              std::to_string(n * n * n + 2 * n * n - 1));
    }
    if (d + 2 < 3 * n * n) {
        throw InvalidArgument("hierarchical witness blocks need d >= 3/eps^2 - 2");
    }
    if (initial) {
        check_ascending(*initial, d);
    }
    DiscreteDistribution underlying = uniform(FiniteDomain(d));
    DiscreteDistribution start = initial ? *initial : underlying;

    const std::size_t n2 = n * n;
    const PointSet one = closed(1, 1);
    std::vector<PointSet> blocks{
        closed(1, n2),
        join({closed(1, n), half_open(n2, 2 * n2 - n)}),
        join({closed(1, n), half_open(2 * n2 - n, 3 * n2 - 2 * n)}),
        join({one, half_open(n, n2 + n - 1)}),
        join({one, half_open(n, 2 * n - 1), half_open(n2 + n - 1, 2 * n2 - 1)}),
        join({one, half_open(n, 2 * n - 1), half_open(2 * n2 - 1, 3 * n2 - n - 1)}),
        join({one, half_open(2 * n - 1, n2 + 2 * n - 2)}),
        join({one, half_open(2 * n - 1, 3 * n - 2), half_open(n2 + 2 * n - 2, 2 * n2 + n - 2)}),
        join({one, half_open(2 * n - 1, 3 * n - 2), half_open(2 * n2 + n - 2, 3 * n2 - 2)}),
    };
    std::vector<PointSet> groups{
        closed(1, n),
        join({one, half_open(n, 2 * n - 1)}),
        join({one, half_open(2 * n - 1, 3 * n - 2)}),
    };

    const Hypothesis truth = Hypothesis::constant(d, 1);
    const auto script = flips_of(truth, blocks);
    auto hc = witness_class(cls, WitnessKind::Hier, d, truth, script);

    HierWitness w{
        .epsilon = epsilon,
        .inverse_epsilon = n,
        .dimension = d,
        .extrapolated = !(n == 2 && d == 16),
        .common = one,
        .blocks = std::move(blocks),
        .group_blocks = std::move(groups),
        .instance = Instance(underlying, start, truth, std::move(hc)),
        .minimizer = MinimizerSpec::scripted(epsilon, script),
        .claimed_risk = 0.0,
    };
    PointSet shared = w.group_blocks[0];
    for (const auto& g : w.group_blocks) {
        shared = set_intersection(shared, g);
    }
    w.claimed_risk = prob_of(w.instance.underlying(), shared);
    return w;
}

Instance build_interval_witness(WitnessKind kind, double epsilon) {
    if (kind == WitnessKind::Path) {
        const std::size_t n = inverse_of(epsilon);
        return build_path_witness(epsilon, 2 * n, std::nullopt, WeightPolicy::uniform(), WitnessClass::Intervals)
            .instance;
    }
    return build_hier_witness(epsilon, std::nullopt, std::nullopt, WitnessClass::Intervals).instance;
}

WitnessReport verify_witness(const PathWitness& witness, const BenchmarkTrace& trace) {
    WitnessReport report;
    const auto& inst = witness.instance;
    const auto& initial = inst.initial();
    const auto& underlying = inst.underlying();
    report.claimed_risk = witness.claimed_risk;

    if (trace.rounds.size() != witness.rounds) {
        report.failures.push_back("trace has " + std::to_string(trace.rounds.size()) + " rounds, witness " +
                                  std::to_string(witness.rounds));
    }
    report.common_error = true;
    const std::size_t count = std::min(trace.rounds.size(), witness.blocks.size());
    for (std::size_t t = 0; t < count; ++t) {
        const auto& round = trace.rounds[t];
        const auto& block = witness.blocks[t];
        double value = round.weights[0] * prob_of(initial, block);
        for (std::size_t tp = 0; tp < t; ++tp) {
            value += round.weights[tp + 1] * atom_mass(initial, underlying, &witness.blocks[tp], block);
        }
        WitnessStepCheck check{
            .label = "t=" + std::to_string(t),
            .closed_form = value,
            .engine_risk = round.risk_on_distribution,
            .agrees = std::abs(value - round.risk_on_distribution) <= kAgreement,
            .consistent = value <= witness.epsilon + kConsistencySlack,
        };
        if (!check.agrees) {
            report.failures.push_back(check.label + ": closed form " + format_number(value) + " != engine " +
                                      format_number(round.risk_on_distribution));
        }
        if (!check.consistent) {
            report.failures.push_back(check.label + ": risk " + format_number(value) + " exceeds eps");
        }
        if (round.errors != block) {
            report.failures.push_back(check.label + ": engine error set differs from the scripted block");
        }
        if (!is_subset(witness.common, round.errors)) {
            report.common_error = false;
        }
        report.steps.push_back(std::move(check));
    }
    if (!report.common_error) {
        report.failures.push_back("common block is not misclassified by every round");
    }

    for (std::size_t i = 0; i < witness.tallies.size(); ++i) {
        const auto& v = witness.tallies[i];
        double total = 0.0;
        for (double x : v) {
            total += x;
        }
        if (total > 1.0 + kExact || v[witness.assignment[i]] > witness.epsilon / 2.0 + kExact) {
            report.tallies_ok = false;
        }
    }
    if (!report.tallies_ok) {
        report.failures.push_back("reassignment tallies exceed their bounds");
    }

    if (!trace.rounds.empty()) {
        report.majority_risk = risk_01(trace.final_majority(), underlying, inst);
    }
    report.attains = std::abs(report.majority_risk - report.claimed_risk) <= kExact;
    if (!report.attains) {
        report.failures.push_back("majority risk " + format_number(report.majority_risk) + " != claimed " +
                                  format_number(report.claimed_risk));
    }
    return report;
}

WitnessReport verify_witness(const HierWitness& witness, const HierTrace& trace) {
    WitnessReport report;
    const auto& inst = witness.instance;
    const auto& initial = inst.initial();
    const auto& underlying = inst.underlying();
    report.claimed_risk = witness.claimed_risk;

    if (trace.leaves.size() != witness.blocks.size()) {
        report.failures.push_back("trace has " + std::to_string(trace.leaves.size()) + " leaf calls, witness " +
                                  std::to_string(witness.blocks.size()));
    }
    const std::size_t count = std::min(trace.leaves.size(), witness.blocks.size());
    for (std::size_t i = 0; i < count; ++i) {
        const auto& leaf = trace.leaves[i];
        const auto& block = witness.blocks[i];
        double value = 0.0;
        for (std::size_t j = 0; j < leaf.atoms.size(); ++j) {
            const auto& atom = trace.atoms[leaf.atoms[j]];
            value += leaf.weights[j] * atom_mass(initial, underlying, atom.initial ? nullptr : &atom.source_errors, block);
        }
        WitnessStepCheck check{
            .label = leaf.node_path + ":" + std::to_string(leaf.step),
            .closed_form = value,
            .engine_risk = leaf.risk_on_distribution,
            .agrees = std::abs(value - leaf.risk_on_distribution) <= kAgreement,
            .consistent = value <= witness.epsilon + kConsistencySlack,
        };
        if (!check.agrees) {
            report.failures.push_back(check.label + ": closed form " + format_number(value) + " != engine " +
                                      format_number(leaf.risk_on_distribution));
        }
        if (!check.consistent) {
            report.failures.push_back(check.label + ": risk " + format_number(value) + " exceeds eps");
        }
        if (error_set(leaf.classifier, inst) != block) {
            report.failures.push_back(check.label + ": engine error set differs from the scripted block");
        }
        report.steps.push_back(std::move(check));
    }

    const auto groups = trace.top_level();
    report.common_error = groups.size() == witness.group_blocks.size();
    for (std::size_t j = 0; j < groups.size(); ++j) {
        const auto errors = error_set(groups[j], inst);
        if (!is_subset(witness.common, errors)) {
            report.common_error = false;
        }
        if (j < witness.group_blocks.size() && errors != witness.group_blocks[j]) {
            report.failures.push_back("inner majority " + std::to_string(j) + " errs outside its group block");
        }
    }
    if (!report.common_error) {
        report.failures.push_back("common point is not misclassified by every inner majority");
    }

    report.majority_risk = risk_01(trace.output(), underlying, inst);
    report.attains = std::abs(report.majority_risk - report.claimed_risk) <= kExact;
    if (!report.attains) {
        report.failures.push_back("majority risk " + format_number(report.majority_risk) + " != claimed " +
                                  format_number(report.claimed_risk));
    }
    return report;
}

std::string proof_coordinates(const PointSet& block) {
    std::ostringstream out;
    std::size_t i = 0;
    bool first = true;
    while (i < block.size()) {
        std::size_t j = i;
        while (j + 1 < block.size() && block[j + 1] == block[j] + 1) {
            ++j;
        }
        const std::size_t lo = block[i] + 1;
        const std::size_t hi = block[j] + 1;
        if (!first) {
            out << ' ';
        }
        if (lo == hi) {
            out << '[' << lo << ']';
        } else if (lo == 1) {
            out << "[1, " << hi << ']';
        } else {
            out << '(' << lo - 1 << ", " << hi << ']';
        }
        first = false;
        i = j + 1;
    }
    return first ? "{}" : out.str();
}

std::string layout_text(const PathWitness& w) {
    std::ostringstream out;
    out << "path witness  eps=" << format_number(w.epsilon) << "  d=" << w.dimension << "  k=" << w.common_size
        << "  k'=" << w.block_size << "  T=" << w.horizon << "  L=" << w.rounds << '\n';
    out << pad("block", 8) << pad("size", 6) << "coordinates\n";
    out << pad("K", 8) << pad(std::to_string(w.common.size()), 6) << proof_coordinates(w.common) << '\n';
    const std::size_t distinct = std::min(w.rounds, w.horizon);
    for (std::size_t t = 0; t < distinct; ++t) {
        out << pad("K_" + std::to_string(t), 8) << pad(std::to_string(w.blocks[t].size()), 6)
            << proof_coordinates(w.blocks[t]) << '\n';
    }
    if (!w.assignment.empty()) {
        out << pad("round", 8) << pad("phi", 6) << "tally\n";
        for (std::size_t i = 0; i < w.assignment.size(); ++i) {
            const auto phi = w.assignment[i];
            out << pad(std::to_string(w.horizon + i), 8) << pad(std::to_string(phi), 6)
                << format_number(w.tallies[i][phi]) << '\n';
        }
    }
    out << "claimed majority risk " << format_number(w.claimed_risk) << '\n';
    return out.str();
}

std::string layout_text(const HierWitness& w) {
    std::ostringstream out;
    out << "hier witness  eps=" << format_number(w.epsilon) << "  d=" << w.dimension;
    if (w.extrapolated) {
        out << "  (extrapolated)";
    }
    out << '\n' << pad("block", 8) << pad("size", 6) << "coordinates\n";
    for (std::size_t g = 0; g < w.group_blocks.size(); ++g) {
        for (std::size_t i = 3 * g; i < 3 * g + 3; ++i) {
            out << pad("K_" + std::to_string(i), 8) << pad(std::to_string(w.blocks[i].size()), 6)
                << proof_coordinates(w.blocks[i]) << '\n';
        }
        out << pad("K_g" + std::to_string(g), 8) << pad(std::to_string(w.group_blocks[g].size()), 6)
            << proof_coordinates(w.group_blocks[g]) << '\n';
    }
    out << "claimed majority risk " << format_number(w.claimed_risk) << '\n';
    return out.str();
}

}  // namespace dynbench
