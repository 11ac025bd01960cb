#include <gtest/gtest.h>

#include <cmath>

#include "dynbench/errors.hpp"
#include "dynbench/hier_engine.hpp"
#include "dynbench/measures.hpp"
#include "dynbench/witnesses.hpp"
#include "fixtures.hpp"

using namespace dynbench;
namespace fx = dynbench::fixtures;

TEST(HierConfig, AnnotatorRounds) {
    EXPECT_EQ((HierConfig{2, 3, {}, {}}.annotator_rounds()), 9u);
    EXPECT_EQ((HierConfig{3, 2, {}, {}}.annotator_rounds()), 8u);
}

TEST(HierRun, DepthOneMatchesPath) {
    for (std::uint64_t s = 0; s < 40; ++s) {
        const auto inst = s % 2 ? fx::shifted(3 + s % 8, 600 + s) : fx::realizable(3 + s % 8, 600 + s);
        for (const auto& mixture : {WeightPolicy::uniform(), WeightPolicy::random_simplex(s)}) {
            Minimizer a(MinimizerSpec::random(0.2, s));
            Minimizer b(MinimizerSpec::random(0.2, s));
            const auto path = run_path(inst, a, PathConfig{4, mixture, {}});
            const auto hier = run_hier(inst, b, HierConfig{1, 4, mixture, {}});
            ASSERT_EQ(hier.leaves.size(), path.rounds.size()) << s;
            for (std::size_t t = 0; t < path.rounds.size(); ++t) {
                EXPECT_EQ(hier.leaves[t].classifier, path.rounds[t].classifier);
                EXPECT_EQ(hier.leaves[t].distribution, path.rounds[t].distribution);
            }
            EXPECT_EQ(hier.output(), path.output());
        }
    }
}

TEST(HierRun, TreeShapeWithoutEarlyStops) {
    const auto w = 3u;
    const auto witness = build_hier_witness(0.5, 16);
    const auto& inst = witness.instance;
    Minimizer m(witness.minimizer);
    const auto trace = run_hier(inst, m, HierConfig{2, w, {}, {}});
    ASSERT_EQ(trace.leaves.size(), 9u);
    ASSERT_EQ(trace.root.steps.size(), 3u);
    EXPECT_EQ(trace.root.path, "r");
    EXPECT_EQ(trace.root.steps[1].subtree.at(0).path, "r.1");
    EXPECT_EQ(trace.leaves[4].node_path, "r.1");
    EXPECT_EQ(trace.leaves[4].step, 1u);
    // The first leaf sees only D0; the last node of the root's third step sees
    // D0, the root's two error atoms and its own two error atoms.
    EXPECT_EQ(trace.leaves[0].atoms.size(), 1u);
    EXPECT_EQ(trace.leaves[8].atoms.size(), 5u);
}

TEST(HierRun, UniformLeafWeights) {
    const auto inst = fx::realizable(10, 8);
    Minimizer m(MinimizerSpec::random(0.3, 1));
    const auto trace = run_hier(inst, m, HierConfig{2, 3, {}, {}});
    for (const auto& leaf : trace.leaves) {
        for (double w : leaf.weights) {
            EXPECT_DOUBLE_EQ(w, 1.0 / static_cast<double>(leaf.weights.size()));
        }
        EXPECT_TRUE(is_subset(leaf.distribution.support(), inst.underlying().support()));
    }
}

TEST(HierRun, EarlySuccessReturnsPerfectModel) {
    const auto inst = fx::realizable(6, 3);
    Minimizer m(MinimizerSpec::perfect());
    const auto trace = run_hier(inst, m, HierConfig{2, 3, {}, {}});
    EXPECT_TRUE(trace.root.early_success);
    EXPECT_EQ(trace.leaves.size(), 1u);
    EXPECT_EQ(risk_01(trace.output(), inst.underlying(), inst), 0.0);
}

TEST(HierRun, DeterministicPerSeed) {
    const auto inst = fx::realizable(9, 4);
    Minimizer a(MinimizerSpec::random(0.25, 7));
    Minimizer b(MinimizerSpec::random(0.25, 7));
    const HierConfig cfg{3, 2, WeightPolicy::random_simplex(2), WeightPolicy::random_simplex(3)};
    const auto x = run_hier(inst, a, cfg);
    const auto y = run_hier(inst, b, cfg);
    ASSERT_EQ(x.leaves.size(), y.leaves.size());
    for (std::size_t i = 0; i < x.leaves.size(); ++i) {
        EXPECT_EQ(x.leaves[i].classifier, y.leaves[i].classifier);
    }
}

TEST(HierBound, Value) {
    EXPECT_DOUBLE_EQ(thm4_bound(0.5, 0.0), 543.0 / 8.0);
    EXPECT_DOUBLE_EQ(thm4_bound(0.1, 0.1), 0.543 + 0.3);
}

TEST(HierBound, HoldsAndRequiresShape) {
    for (std::uint64_t s = 0; s < 40; ++s) {
        const auto inst = fx::realizable(2 + s % 10, 700 + s);
        Minimizer m(MinimizerSpec::random(0.1, s));
        const auto trace = run_hier(inst, m, HierConfig{2, 3, {}, {}});
        EXPECT_TRUE(check_thm4_bound(inst, trace).holds);
    }
    const auto inst = fx::realizable(6, 1);
    Minimizer m(MinimizerSpec::random(0.1, 1));
    const auto trace = run_hier(inst, m, HierConfig{2, 2, {}, {}});
    EXPECT_THROW(check_thm4_bound(inst, trace), InvalidArgument);
}
