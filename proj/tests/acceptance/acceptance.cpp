#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dynbench/experiments.hpp"
#include "dynbench/gradient_updates.hpp"
#include "dynbench/hier_engine.hpp"
#include "dynbench/io.hpp"
#include "dynbench/measures.hpp"
#include "dynbench/noise_dynamics.hpp"
#include "dynbench/path_engine.hpp"
#include "dynbench/witnesses.hpp"
#include "fixtures.hpp"

using namespace dynbench;
namespace fx = dynbench::fixtures;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;  // 0: no runtime limit
    std::function<Outcome()> run;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

std::size_t sweep_dimension(std::uint64_t i, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(i % (hi - lo + 1));
}

// Majority-of-three or the zero-risk model the benchmark stopped on.
double three_round_output_risk(const Instance& inst, const BenchmarkTrace& trace) {
    if (trace.rounds.size() >= 3) {
        const std::vector<Hypothesis> first{trace.rounds[0].classifier, trace.rounds[1].classifier,
                                            trace.rounds[2].classifier};
        return risk_01(majority(first), inst.underlying(), inst);
    }
    return risk_01(trace.output(), inst.underlying(), inst);
}

Instance sweep_instance(std::uint64_t i) {
    const std::size_t d = sweep_dimension(i, 2, 16);
    return i % 2 == 0 ? fx::realizable(d, 1000 + i) : fx::shifted(d, 1000 + i);
}

Outcome exact_three_rounds() {
    std::size_t nonzero = 0;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const auto inst = sweep_instance(i);
        Minimizer m(MinimizerSpec::perfect());
        const auto trace = run_path(inst, m, PathConfig{3, {}, {}});
        const double risk = three_round_output_risk(inst, trace);
        worst = std::max(worst, risk);
        nonzero += risk != 0.0;
    }
    return {nonzero == 0, fmt("100 runs, %g nonzero, max risk %g", static_cast<double>(nonzero), worst)};
}

Outcome few_bad_rounds() {
    std::size_t violations = 0;
    std::size_t longest = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const auto inst = sweep_instance(i);
        Minimizer m(MinimizerSpec::perfect());
        const auto trace = run_path(inst, m, PathConfig{20, {}, {}});
        longest = std::max(longest, trace.rounds.size());
        for (double alpha : {0.25, 0.5}) {
            violations += !check_lemma1(trace, alpha);
        }
    }
    return {violations == 0,
            fmt("200 checks, %g violations, longest run %g rounds", static_cast<double>(violations),
                static_cast<double>(longest))};
}

struct WitnessRun {
    PathWitness witness;
    BenchmarkTrace trace;
    WitnessReport report;
};

WitnessRun path_witness_run(const WeightPolicy& mixture, const WeightPolicy& majority,
                            WitnessClass cls = WitnessClass::Explicit) {
    auto witness = build_path_witness(0.1, 30, std::nullopt, mixture, cls);
    Minimizer m(witness.minimizer);
    auto trace = run_path(witness.instance, m, PathConfig{30, mixture, majority});
    auto report = verify_witness(witness, trace);
    return {std::move(witness), std::move(trace), std::move(report)};
}

bool rounds_consistent(const WitnessRun& run) {
    for (const auto& r : run.trace.rounds) {
        if (!verify_eps_consistency(r.distribution, r.classifier, run.witness.instance, 0.1).consistent) {
            return false;
        }
    }
    return true;
}

Outcome path_witness() {
    std::size_t failures = 0;
    double worst = 0.0;
    auto account = [&](const WitnessRun& run) {
        const bool good = run.report.ok() && rounds_consistent(run) && run.trace.rounds.size() == 30 &&
                          std::abs(run.report.majority_risk - 0.00125) <= 1e-12;
        failures += !good;
        worst = std::max(worst, std::abs(run.report.majority_risk - 0.00125));
    };
    const auto base = path_witness_run({}, {});
    if (base.witness.dimension != 800) {
        return {false, "witness dimension is not 800"};
    }
    account(base);
    for (std::uint64_t s = 1; s <= 20; ++s) {
        account(path_witness_run({}, WeightPolicy::random_simplex(s)));
    }
    for (std::uint64_t s = 1; s <= 20; ++s) {
        account(path_witness_run(WeightPolicy::random_simplex(100 + s), {}));
    }
    return {failures == 0,
            fmt("41 runs (uniform, 20 majority, 20 mixture), %g failures, max |risk - 0.00125| %.3g",
                static_cast<double>(failures), worst)};
}

bool same_path_trace(const BenchmarkTrace& a, const BenchmarkTrace& b) {
    if (a.rounds.size() != b.rounds.size() || a.perfect_round != b.perfect_round) {
        return false;
    }
    for (std::size_t t = 0; t < a.rounds.size(); ++t) {
        const auto& x = a.rounds[t];
        const auto& y = b.rounds[t];
        if (!(x.distribution == y.distribution) || x.weights != y.weights || x.classifier != y.classifier ||
            x.errors != y.errors || x.risk_on_distribution != y.risk_on_distribution ||
            x.minimum_on_distribution != y.minimum_on_distribution ||
            x.risk_on_underlying != y.risk_on_underlying || x.majority_risk != y.majority_risk) {
            return false;
        }
    }
    return true;
}

Outcome interval_path_witness() {
    const auto expl = path_witness_run({}, {});
    const auto intervals = path_witness_run({}, {}, WitnessClass::Intervals);
    const bool in_class = intervals.witness.instance.hypotheses().kind() == ClassKind::TwoIntervals;
    const bool same = same_path_trace(expl.trace, intervals.trace);
    return {in_class && same && intervals.report.ok(),
            std::string(in_class ? "two-interval class" : "wrong class") +
                (same ? ", trace identical" : ", trace differs")};
}

Outcome three_round_bound() {
    std::size_t violations = 0;
    double tightest = -1e300;
    const double eps_grid[] = {0.05, 0.1, 0.2};
    for (int shifted = 0; shifted < 2; ++shifted) {
        for (std::uint64_t i = 0; i < 500; ++i) {
            const std::size_t d = sweep_dimension(i, 2, 12);
            const auto inst = shifted ? fx::shifted(d, 5000 + i) : fx::realizable(d, 5000 + i);
            Minimizer m(MinimizerSpec::random(eps_grid[i % 3], 77 + i));
            const auto trace = run_path(inst, m, PathConfig{3, {}, {}});
            const auto report = check_thm1_bound(inst, trace);
            violations += !report.holds;
            tightest = std::max(tightest, report.risk - report.bound);
        }
    }
    return {violations == 0, fmt("1000 runs (500 with D0 = D), %g violations, max risk - bound %.4g",
                                 static_cast<double>(violations), tightest)};
}

struct HierRun {
    HierWitness witness;
    HierTrace trace;
    WitnessReport report;
};

HierRun hier_witness_run(WitnessClass cls) {
    auto witness = build_hier_witness(0.5, 16, std::nullopt, cls);
    Minimizer m(witness.minimizer);
    auto trace = run_hier(witness.instance, m, HierConfig{2, 3, {}, {}});
    auto report = verify_witness(witness, trace);
    return {std::move(witness), std::move(trace), std::move(report)};
}

bool same_hier_trace(const HierTrace& a, const HierTrace& b) {
    if (a.leaves.size() != b.leaves.size() || a.atoms.size() != b.atoms.size() || a.output() != b.output()) {
        return false;
    }
    for (std::size_t i = 0; i < a.leaves.size(); ++i) {
        const auto& x = a.leaves[i];
        const auto& y = b.leaves[i];
        if (x.node_path != y.node_path || x.step != y.step || x.atoms != y.atoms || x.weights != y.weights ||
            !(x.distribution == y.distribution) || x.classifier != y.classifier ||
            x.risk_on_distribution != y.risk_on_distribution || x.risk_on_underlying != y.risk_on_underlying) {
            return false;
        }
    }
    return true;
}

Outcome hier_witness() {
    const auto expl = hier_witness_run(WitnessClass::Explicit);
    const auto intervals = hier_witness_run(WitnessClass::Intervals);
    std::size_t consistent = 0;
    for (const auto& leaf : expl.trace.leaves) {
        consistent += verify_eps_consistency(leaf.distribution, leaf.classifier, expl.witness.instance, 0.5).consistent;
    }
    const auto groups = expl.trace.top_level();
    const double risk = groups.size() == 3 ? risk_01(majority(groups), expl.witness.instance.underlying(),
                                                     expl.witness.instance)
                                           : -1.0;
    const bool same = same_hier_trace(expl.trace, intervals.trace);
    const bool in_class = intervals.witness.instance.hypotheses().kind() == ClassKind::ThreeIntervals;
    const bool pass = expl.report.ok() && expl.trace.leaves.size() == 9 && consistent == 9 &&
                      std::abs(risk - 0.0625) <= 1e-12 && same && in_class && intervals.report.ok();
    return {pass, fmt("%g/9 steps consistent, majority risk %g, interval trace ", static_cast<double>(consistent),
                      risk) +
                      (same && in_class ? "identical" : "differs")};
}

Outcome hier_bound() {
    std::size_t violations = 0;
    double tightest = -1e300;
    const double eps_grid[] = {0.05, 0.1, 0.2};
    for (std::uint64_t i = 0; i < 200; ++i) {
        const std::size_t d = sweep_dimension(i, 2, 12);
        const auto inst = fx::realizable(d, 9000 + i);
        Minimizer m(MinimizerSpec::random(eps_grid[i % 3], 300 + i));
        const auto trace = run_hier(inst, m, HierConfig{2, 3, {}, {}});
        const auto report = check_thm4_bound(inst, trace);
        violations += !report.holds;
        tightest = std::max(tightest, report.risk - report.bound);
    }
    return {violations == 0, fmt("200 runs, %g violations, max risk - bound %.4g", static_cast<double>(violations),
                                 tightest)};
}

Instance noisy_instance(std::uint64_t seed) {
    GeneratorSpec g;
    g.dimension = 6 + static_cast<std::size_t>(seed % 7);
    g.underlying = GeneratorSpec::Shape::Random;
    g.noisy_points = 1 + static_cast<std::size_t>(seed % 3);
    g.noise_mass = 0.2;
    g.seed = seed;
    return generate_instance(g);
}

Outcome noise_concentration() {
    constexpr double eps = 0.01;
    constexpr double delta = 0.2;
    constexpr double tol = 1e-9;
    std::size_t violations = 0;
    std::size_t checked = 0;
    std::size_t unchecked_runs = 0;
    double margin = 1e300;
    const double first_bound = delta1_lower_bound(eps, delta);
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto inst = noisy_instance(20000 + i);
        Minimizer m(MinimizerSpec::random(eps, 500 + i));
        const auto trace = run_noisy_path(inst, m, 21);
        if (!trace.bounds_checked) {
            ++unchecked_runs;
            continue;
        }
        for (std::size_t t = 1; t < trace.rounds.size() && t <= 20; ++t) {
            const double share = trace.rounds[t].noise_share;
            double bound = delta_lower_bound(t, eps, delta);
            if (t == 1) {
                bound = std::max(bound, first_bound);
            }
            ++checked;
            violations += share < bound - tol;
            margin = std::min(margin, share - bound);
        }
    }
    return {violations == 0 && unchecked_runs == 0 && checked > 0,
            fmt("%g round checks, %g violations, min slack %.4g", static_cast<double>(checked),
                static_cast<double>(violations), margin) +
                fmt(", first-round bound %.6f", first_bound)};
}

Outcome boosting_rate() {
    std::size_t rate_failures = 0;
    std::size_t contraction_failures = 0;
    std::size_t steps = 0;
    for (std::uint64_t i = 0; i < 30; ++i) {
        const auto inst = fx::realizable(12, 30000 + i);
        Minimizer m(MinimizerSpec::random(0.2, 700 + i));
        const auto run = run_boost(inst, m, 30);
        rate_failures += !run.rate_holds;
        contraction_failures += !run.contraction_holds;
        steps += run.state.history.size();
    }
    return {rate_failures == 0 && contraction_failures == 0,
            fmt("30 runs, %g steps, rate failures %g", static_cast<double>(steps),
                static_cast<double>(rate_failures)) +
                fmt(", contraction failures %g", static_cast<double>(contraction_failures))};
}

struct HingeTally {
    std::size_t steps = 0;
    std::size_t certificate_failures = 0;
    std::size_t increases = 0;
    std::size_t runs_with_increase = 0;
    double worst_increase = 0.0;
};

HingeTally hinge_sweep(bool perfect) {
    HingeTally tally;
    const double eps_grid[] = {0.05, 0.1, 0.2};
    for (std::uint64_t i = 0; i < 100; ++i) {
        const double eps = eps_grid[i % 3];
        const auto inst = fx::realizable(sweep_dimension(i, 2, 12), 40000 + i);
        Minimizer m(perfect ? MinimizerSpec::perfect() : MinimizerSpec::random(eps, 900 + i));
        HingeState state;
        try {
            state = run_hinge(inst, m, 60, 0.05);
        } catch (const DescentViolation&) {
            ++tally.certificate_failures;
            continue;
        }
        bool increased = false;
        for (const auto& s : state.history) {
            if (s.status != StepStatus::Updated) {
                continue;
            }
            ++tally.steps;
            tally.certificate_failures += s.certificate < 1.0 - 2.0 * m.epsilon() - kConsistencySlack;
            const double rise = s.risk_after - s.risk_before;
            if (rise > 1e-12) {
                ++tally.increases;
                increased = true;
            }
            tally.worst_increase = std::max(tally.worst_increase, rise);
        }
        tally.runs_with_increase += increased;
    }
    return tally;
}

Outcome hinge_descent() {
    const auto approx = hinge_sweep(false);
    const auto exact = hinge_sweep(true);
    return {approx.certificate_failures == 0 && approx.increases == 0,
            fmt("100 runs, %g steps, certificate failures %g", static_cast<double>(approx.steps),
                static_cast<double>(approx.certificate_failures)) +
                fmt(", risk rose in %g steps over %g runs (max %.3g)", static_cast<double>(approx.increases),
                    static_cast<double>(approx.runs_with_increase), approx.worst_increase) +
                fmt("; perfect oracle: %g rises", static_cast<double>(exact.increases))};
}

std::optional<double> brute_z(const BenchmarkTrace& trace, const Instance& inst, std::size_t horizon) {
    const auto& D = inst.underlying();
    const auto final_majority = trace.final_majority();
    auto errs = [&](const Hypothesis& h, Point x) { return h[x] != inst.truth()[x]; };
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < horizon; ++a) {
        for (std::size_t b = 0; b < horizon; ++b) {
            if (a == b) {
                continue;
            }
            double joint = 0.0;
            double with_majority = 0.0;
            for (Point x = 0; x < inst.size(); ++x) {
                if (errs(trace.rounds[a].classifier, x) && errs(trace.rounds[b].classifier, x)) {
                    joint += D[x];
                    if (errs(final_majority, x)) {
                        with_majority += D[x];
                    }
                }
            }
            if (joint > 0.0) {
                total += with_majority / joint;
                ++pairs;
            }
        }
    }
    if (pairs == 0) {
        return std::nullopt;
    }
    return total / static_cast<double>(pairs);
}

Outcome z_identity() {
    const auto run = path_witness_run({}, {});
    std::size_t off = 0;
    for (std::size_t T = 2; T <= 20; ++T) {
        const auto z = z_score(run.trace, run.witness.instance, T);
        off += !z || *z != 1.0;
    }
    std::size_t mismatches = 0;
    std::size_t defined = 0;
    std::size_t compared = 0;
    for (std::uint64_t i = 0; compared < 50; ++i) {
        const auto inst = fx::realizable(sweep_dimension(i, 3, 8), 50000 + i);
        Minimizer m(MinimizerSpec::random(0.3, 1100 + i));
        const auto trace = run_path(inst, m, PathConfig{6, {}, {}});
        if (trace.rounds.size() < 4) {
            continue;
        }
        ++compared;
        const auto z = z_score(trace, inst, 4);
        const auto expected = brute_z(trace, inst, 4);
        defined += z.has_value();
        mismatches += z != expected;
    }
    return {off == 0 && mismatches == 0,
            fmt("witness z = 1 failed at %g horizons; 50 random traces (%g defined), %g oracle mismatches",
                static_cast<double>(off), static_cast<double>(defined), static_cast<double>(mismatches))};
}

Outcome distance_oracle() {
    Rng rng(60000);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t d = 1 + rng.below(8);
        const auto cls = HypothesisClass::complete(d);
        const auto p = fx::random_distribution(d, rng);
        const auto q = i % 4 == 0 ? fx::partial_support(d, rng) : fx::random_distribution(d, rng);
        worst = std::max(worst, std::abs(hdh_distance_by_pairs(p, q, cls) - total_variation(p, q)));
    }
    return {worst <= 1e-12, fmt("100 pairs, max |pairs - closed form| %.3g", worst)};
}

// Plateau instance: point 0 carries eps^2/8 of D, the rest is spread at random.
Instance plateau_instance(double eps) {
    const std::size_t d = 12;
    const double target = eps * eps / 8.0;
    Rng rng(70000);
    auto rest = rng.simplex(d - 1);
    std::vector<double> mass(d);
    mass[0] = target;
    for (std::size_t x = 1; x < d; ++x) {
        mass[x] = rest[x - 1] * (1.0 - target);
    }
    std::vector<Label> labels(d);
    for (auto& l : labels) {
        l = rng.coin() ? Label{1} : Label{-1};
    }
    DiscreteDistribution D(std::move(mass));
    return Instance(D, D, Hypothesis(std::move(labels)), HypothesisClass::complete(d));
}

RolloutSummary plateau_rollouts(const Instance& inst, const MinimizerSpec& spec) {
    DesignSpec design;
    design.kind = DesignKind::Path;
    design.rounds = 25;
    return run_rollouts(inst, spec, design, 50, 4);
}

Outcome plateau() {
    constexpr double eps = 0.2;
    const auto inst = plateau_instance(eps);
    const double target_mass = inst.underlying()[0];
    auto adversarial = MinimizerSpec::adversarial(eps, {0});
    const auto adv = plateau_rollouts(inst, adversarial);
    std::size_t below = 0;
    double lowest = 1.0;
    for (const auto& r : adv.rollouts) {
        below += r.final_risk < target_mass;
        lowest = std::min(lowest, r.final_risk);
    }
    const auto rnd = plateau_rollouts(inst, MinimizerSpec::random(eps, 1));
    std::vector<double> zs;
    std::vector<double> finals;
    for (const auto* summary : {&adv, &rnd}) {
        for (const auto& r : summary->rollouts) {
            if (r.z) {
                zs.push_back(*r.z);
                finals.push_back(r.final_risk);
            }
        }
    }
    double r = 0.0;
    bool degenerate = false;
    try {
        r = pearson(zs, finals);
    } catch (const DegenerateVariance&) {
        degenerate = true;
    }
    return {below == 0 && !degenerate && r > 0.0,
            fmt("min final risk %.5g vs target %.5g", lowest, target_mass) +
                (degenerate ? std::string(", correlation undefined")
                            : fmt(", r(z4, final) = %.3f over %g rollouts", r, static_cast<double>(zs.size())))};
}

std::string criterion_csv(int which) {
    std::ostringstream out;
    switch (which) {
    case 0:
        out << path_csv_header();
        for (std::uint64_t i = 0; i < 20; ++i) {
            const auto inst = fx::realizable(sweep_dimension(i, 2, 12), 5000 + i);
            Minimizer m(MinimizerSpec::random(0.1, 77 + i));
            out << path_csv_rows(run_path(inst, m, PathConfig{3, {}, {}}), i);
        }
        break;
    case 1: {
        const auto run = path_witness_run(WeightPolicy::random_simplex(3), WeightPolicy::random_simplex(4));
        out << path_csv_header() << path_csv_rows(run.trace, 0);
        break;
    }
    case 2: {
        const auto run = hier_witness_run(WitnessClass::Explicit);
        out << hier_csv(run.trace, run.witness.instance);
        const auto inst = fx::realizable(10, 9001);
        Minimizer m(MinimizerSpec::random(0.1, 301));
        out << hier_csv(run_hier(inst, m, HierConfig{2, 3, {}, {}}), inst);
        break;
    }
    case 3:
        out << noisy_csv_header();
        for (std::uint64_t i = 0; i < 10; ++i) {
            Minimizer m(MinimizerSpec::random(0.01, 500 + i));
            out << noisy_csv_rows(run_noisy_path(noisy_instance(20000 + i), m, 21), i);
        }
        break;
    case 4: {
        Minimizer m(MinimizerSpec::random(0.2, 700));
        out << boost_csv(run_boost(fx::realizable(12, 30000), m, 30));
        Minimizer h(MinimizerSpec::random(0.1, 900));
        out << hinge_csv(run_hinge(fx::realizable(8, 40000), h, 60, 0.05));
        break;
    }
    default: {
        const auto inst = plateau_instance(0.2);
        const auto summary = plateau_rollouts(inst, MinimizerSpec::random(0.2, 1));
        out << rollouts_csv(summary) << rollout_series_csv(summary);
        break;
    }
    }
    return out.str();
}

Outcome determinism() {
    std::size_t differing = 0;
    std::size_t bytes = 0;
    for (int which = 0; which < 6; ++which) {
        const auto first = criterion_csv(which);
        const auto second = criterion_csv(which);
        differing += first != second;
        bytes += first.size();
    }
    return {differing == 0, fmt("6 CSV streams (%g bytes), %g differ", static_cast<double>(bytes),
                                static_cast<double>(differing))};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "three-round majority is exact under a perfect minimizer", 10.0, exact_three_rounds},
        {2, "at most 1/alpha rounds are alpha-bad", 0.0, few_bad_rounds},
        {3, "path witness attains eps^2/8", 5.0, path_witness},
        {4, "path witness in the two-interval class", 0.0, interval_path_witness},
        {5, "three-round risk bound", 0.0, three_round_bound},
        {6, "hierarchy witness attains eps^3/2", 0.0, hier_witness},
        {7, "hierarchy risk bound", 0.0, hier_bound},
        {8, "noise share concentrates", 0.0, noise_concentration},
        {9, "boosting rate and surrogate contraction", 0.0, boosting_rate},
        {10, "hinge descent", 0.0, hinge_descent},
        {11, "z score identity and oracle", 0.0, z_identity},
        {12, "disagreement distance equals total variation", 0.0, distance_oracle},
        {13, "adversarial plateau", 0.0, plateau},
        {14, "byte-identical CSV on repeat", 0.0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("threw: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0.0 && seconds > c.budget_seconds) {
            outcome.pass = false;
            outcome.detail += fmt(" [over %gs budget]", c.budget_seconds);
        }
        std::printf("%s %2d %-50s %s (%.2fs)\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name,
                    outcome.detail.c_str(), seconds);
        failed += !outcome.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
