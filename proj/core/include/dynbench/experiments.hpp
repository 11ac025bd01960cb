#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dynbench/domain.hpp"
#include "dynbench/gradient_updates.hpp"
#include "dynbench/minimizers.hpp"
#include "dynbench/path_engine.hpp"
#include "dynbench/witnesses.hpp"

namespace dynbench {

/// Seeded synthetic instance.
///
/// With noisy_points > 0 the noisy set is a random subset of that size and
/// D is rescaled so that Pr_D(noisy) = noise_mass exactly; the initial
/// distribution then equals D.
struct GeneratorSpec {
    enum class Shape { Uniform, Random };
    enum class Initial { Same, Uniform, Random };
    enum class Truth { Random, Positive };

    std::size_t dimension = 8;
    ClassKind kind = ClassKind::Complete;
    Shape underlying = Shape::Uniform;
    Initial initial = Initial::Same;
    Truth truth = Truth::Random;
    std::size_t noisy_points = 0;
    double noise_mass = 0.0;
    std::uint64_t seed = 0;
};

Instance generate_instance(const GeneratorSpec& spec);

enum class DesignKind { Path, Hier, Noisy, Boost, Witness };
enum class BoostLoss { Exponential, Hinge };

struct DesignSpec {
    DesignKind kind = DesignKind::Path;
    std::size_t rounds = 3;  // path, noisy, boost, path witness
    std::size_t depth = 2;   // hier
    std::size_t width = 3;   // hier
    WeightPolicy mixture;
    WeightPolicy majority;
    BoostLoss loss = BoostLoss::Exponential;
    double step = kDefaultHingeStep;  // hinge only
    WitnessKind witness = WitnessKind::Path;
    double witness_epsilon = 0.1;
    bool intervals = false;
};

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    std::optional<GeneratorSpec> generator;
    std::optional<Instance> instance;
    MinimizerSpec minimizer;
    DesignSpec design;
    std::size_t rollouts = 1;
    std::size_t z_round = 4;
    std::string out_dir;  // empty: write to stdout
    OutputFormat format = OutputFormat::Csv;

    /// The inline instance, else the generated one. Witness designs build their own.
    Instance resolve_instance() const;
    /// Throws InvalidArgument on a broken invariant.
    void validate() const;
};

/// Average over ordered pairs t1 != t2 < T of
/// D(E_t1 n E_t2 n E_m) / D(E_t1 n E_t2), with E_m the error set of the
/// majority over the whole trace. Pairs whose joint error set has no
/// D-mass are skipped; nullopt when every pair is skipped.
std::optional<double> z_score(const BenchmarkTrace& trace, const Instance& inst, std::size_t horizon);

/// Sample correlation. Throws DegenerateVariance when either side is constant.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct RolloutRecord {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::vector<double> series;  // majority (or predictor) risk on D per round
    double final_risk = 0.0;
    std::optional<double> z;
    std::optional<std::size_t> perfect_round;
};

struct RolloutSummary {
    std::vector<RolloutRecord> rollouts;
    std::vector<double> mean;   // per round; short series are padded with their last value
    std::vector<double> stdev;  // sample standard deviation, 0 for a single rollout
    std::size_t z_round = 0;
    std::optional<double> correlation;  // Pearson r of z against final risk
};

/// Run `count` rollouts on a fixed instance. Rollout i uses minimizer seed
/// spec.seed + i; nothing else varies.
RolloutSummary run_rollouts(const Instance& inst, const MinimizerSpec& spec, const DesignSpec& design,
                            std::size_t count, std::size_t z_round = 4);

/// Rollouts described by a config, including witness designs.
RolloutSummary run_rollouts(const ExperimentConfig& cfg);

/// Per-round mean and sample stdev; fills summary.mean and summary.stdev.
void aggregate(RolloutSummary& summary);

}  // namespace dynbench
