#include <gtest/gtest.h>

#include "dynbench/errors.hpp"
#include "dynbench/experiments.hpp"
#include "dynbench/noise_dynamics.hpp"
#include "fixtures.hpp"

using namespace dynbench;
namespace fx = dynbench::fixtures;

namespace {

Instance noisy(std::uint64_t seed, double mass, std::size_t points = 2) {
    GeneratorSpec g;
    g.dimension = 9;
    g.underlying = GeneratorSpec::Shape::Random;
    g.noisy_points = points;
    g.noise_mass = mass;
    g.seed = seed;
    return generate_instance(g);
}

}  // namespace

TEST(NoiseBounds, ClosedForms) {
    EXPECT_NEAR(delta_lower_bound(5, 0.02, 0.5), 0.1923076923, 1e-9);
    EXPECT_NEAR(delta_lower_bound(10, 0.01, 0.2), 0.1, 1e-12);
    EXPECT_NEAR(delta1_lower_bound(0.01, 0.2), 0.5545454545, 1e-9);
    EXPECT_THROW(delta_lower_bound(0, 0.01, 0.2), InvalidArgument);
    EXPECT_THROW(delta_lower_bound(1, 0.3, 0.2), InvalidArgument);
}

TEST(NoisyRun, BoundsHoldWhenNoiseDominates) {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto inst = noisy(800 + s, 0.3);
        Minimizer m(MinimizerSpec::random(0.02, s));
        const auto trace = run_noisy_path(inst, m, 16);
        EXPECT_TRUE(trace.delta_dominant);
        EXPECT_TRUE(trace.bounds_checked);
        EXPECT_TRUE(trace.bounds_hold()) << s;
        EXPECT_TRUE(trace.clean_constraint_holds());
        ASSERT_GE(trace.rounds.size(), 2u);
        EXPECT_TRUE(trace.rounds[1].bound.has_value());
        EXPECT_FALSE(trace.rounds[0].bound.has_value());
    }
}

TEST(NoisyRun, NoiseShareStartsAtDelta) {
    const auto inst = noisy(1, 0.25);
    Minimizer m(MinimizerSpec::random(0.05, 1));
    const auto trace = run_noisy_path(inst, m, 4);
    EXPECT_NEAR(trace.delta, 0.25, 1e-12);
    EXPECT_NEAR(trace.rounds[0].noise_share, 0.25, 1e-12);
    EXPECT_NEAR(trace.rounds[0].noisy_risk, 0.125, 1e-12);
}

TEST(NoisyRun, WeakNoiseWarnsWithoutBounds) {
    const auto inst = noisy(2, 0.05);
    Minimizer m(MinimizerSpec::random(0.1, 2));
    const auto trace = run_noisy_path(inst, m, 5);
    EXPECT_FALSE(trace.delta_dominant);
    EXPECT_FALSE(trace.warnings.empty());
    for (const auto& r : trace.rounds) {
        EXPECT_FALSE(r.bound.has_value());
    }
}

TEST(NoisyRun, RealizableDelegatesToPath) {
    const auto inst = fx::realizable(8, 3);
    Minimizer a(MinimizerSpec::random(0.2, 4));
    Minimizer b(MinimizerSpec::random(0.2, 4));
    const auto noisy_trace = run_noisy_path(inst, a, 5);
    const auto path_trace = run_path(inst, b, PathConfig{5, {}, {}});
    ASSERT_EQ(noisy_trace.rounds.size(), path_trace.rounds.size());
    for (std::size_t t = 0; t < path_trace.rounds.size(); ++t) {
        EXPECT_EQ(noisy_trace.rounds[t].classifier, path_trace.rounds[t].classifier);
        EXPECT_EQ(noisy_trace.rounds[t].noise_share, 0.0);
    }
}

TEST(NoisyRun, ErrorDistributionHalvesNoisyPoints) {
    const auto inst = noisy(5, 0.4, 1);
    Minimizer m(MinimizerSpec::random(0.05, 5));
    const auto trace = run_noisy_path(inst, m, 3);
    const auto& r = trace.rounds[0];
    ASSERT_TRUE(r.error_distribution.has_value());
    const double half_noise = 0.5 * 0.4;
    const double clean = prob_of(inst.underlying(), r.errors);
    EXPECT_NEAR(r.error_noise_weight, half_noise / (half_noise + clean), 1e-12);
}
