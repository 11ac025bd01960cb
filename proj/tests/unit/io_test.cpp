#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "dynbench/io.hpp"
#include "dynbench/measures.hpp"
#include "fixtures.hpp"

using namespace dynbench;
namespace fx = dynbench::fixtures;

TEST(Decimal, RoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, 0.00125, 1e-300, 0.0, 123456.789}) {
        EXPECT_EQ(parse_decimal(exact_decimal(v)), v);
    }
    EXPECT_EQ(exact_decimal(0.1), "0.1");
    EXPECT_THROW(parse_decimal("0.1x"), ConfigError);
}

TEST(InstanceJson, RoundTrips) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto inst = fx::shifted(3 + s, s, s % 2 ? ClassKind::Complete : ClassKind::TwoIntervals);
        const auto back = instance_from_json(instance_to_json(inst));
        EXPECT_EQ(back.underlying(), inst.underlying());
        EXPECT_EQ(back.initial(), inst.initial());
        EXPECT_EQ(back.truth(), inst.truth());
        EXPECT_EQ(back.hypotheses().kind(), inst.hypotheses().kind());
    }
}

TEST(InstanceJson, ExplicitClassAndNoise) {
    const auto text = R"({"d": 3, "D": ["0.5", "0.25", "0.25"], "f": [1, -1, 1],
        "class": {"kind": "explicit", "members": [[1, -1, 1], [1, 1, 1]]}, "noisy_set": [2]})";
    const auto inst = instance_from_json(text);
    EXPECT_EQ(inst.hypotheses().members().size(), 2u);
    EXPECT_EQ(inst.initial(), inst.underlying());
    EXPECT_DOUBLE_EQ(inst.noise_mass(), 0.25);
    EXPECT_THROW(instance_from_json(R"({"d": 2, "D": ["0.5", "0.5"], "f": [1, 1], "extra": 1})"), ConfigError);
}

TEST(MinimizerJson, RoundTrips) {
    auto spec = MinimizerSpec::adversarial(0.2, {0, 3});
    const auto back = minimizer_from_json(minimizer_to_json(spec));
    EXPECT_EQ(back.mode, MinimizerMode::AdversarialApprox);
    EXPECT_EQ(back.target, spec.target);
    EXPECT_DOUBLE_EQ(back.epsilon, 0.2);
}

TEST(Config, ParsesGeneratorAndDesign) {
    const auto cfg = config_from_json(R"({
        "generator": {"d": 6, "underlying": "random", "seed": 3},
        "minimizer": {"epsilon": 0.1, "mode": "random", "seed": 4},
        "design": {"kind": "hier", "depth": 2, "width": 3, "mixture": {"policy": "random", "seed": 2}},
        "rollouts": 5, "output": {"format": "json"}})");
    EXPECT_EQ(cfg.design.kind, DesignKind::Hier);
    EXPECT_EQ(cfg.design.mixture.kind, WeightPolicy::Kind::RandomSimplex);
    EXPECT_EQ(cfg.rollouts, 5u);
    EXPECT_EQ(cfg.format, OutputFormat::Json);
    EXPECT_EQ(cfg.resolve_instance().size(), 6u);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(config_from_json(R"({"generator": {"d": 4}, "bogus": 1})"), ConfigError);
    EXPECT_THROW(config_from_json(R"({"generator": {"d": 4}, "design": {"kind": "tree"}})"), ConfigError);
    EXPECT_THROW(config_from_json(R"({"generator": {"d": 4}, "design": {"loss": "log"}})"), ConfigError);
    EXPECT_THROW(config_from_json("{not json"), ConfigError);
}

TEST(Config, LoadsInstanceFileRelativeToConfig) {
    const std::string dir = ::testing::TempDir();
    const auto inst = fx::realizable(4, 1);
    {
        std::ofstream(dir + "inst.json") << instance_to_json(inst);
        std::ofstream(dir + "cfg.json") << R"({"instance_file": "inst.json", "minimizer": {"mode": "perfect"}})";
    }
    const auto cfg = load_config(dir + "cfg.json");
    ASSERT_TRUE(cfg.instance.has_value());
    EXPECT_EQ(cfg.instance->truth(), inst.truth());
    EXPECT_THROW(load_config(dir + "missing.json"), ConfigError);
}

TEST(Csv, VersionedHeadersAndRows) {
    EXPECT_EQ(path_csv_header(), "# dynbench path v1\nrun_id,round,risk_ht_on_Dt,risk_ht_on_D,maj_risk,perfect_round\n");
    const auto inst = fx::realizable(8, 2);
    Minimizer m(MinimizerSpec::random(0.2, 1));
    const auto trace = run_path(inst, m, PathConfig{3, {}, {}});
    const auto rows = path_csv_rows(trace, 7);
    EXPECT_EQ(rows.rfind("7,0,", 0), 0u);
    EXPECT_EQ(static_cast<std::size_t>(std::count(rows.begin(), rows.end(), '\n')), trace.rounds.size());
    EXPECT_NE(noisy_csv_header().find("delta_t,bound_t"), std::string::npos);
}

TEST(Json, TraceSerializes) {
    const auto inst = fx::realizable(6, 3);
    Minimizer m(MinimizerSpec::random(0.2, 1));
    const auto text = to_json(run_path(inst, m, PathConfig{3, {}, {}}));
    EXPECT_NE(text.find("\"rounds\""), std::string::npos);
}
