#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "dynbench/errors.hpp"
#include "dynbench/experiments.hpp"
#include "dynbench/gradient_updates.hpp"
#include "dynbench/hier_engine.hpp"
#include "dynbench/noise_dynamics.hpp"
#include "dynbench/path_engine.hpp"
#include "dynbench/witnesses.hpp"

namespace dynbench {

/// Malformed or inconsistent configuration. The CLI maps these to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Version tag carried by every CSV header comment line.
inline constexpr int kCsvVersion = 1;

/// Shortest decimal string that reads back to the same double.
std::string exact_decimal(double value);
double parse_decimal(std::string_view text);

/// Instance JSON:
///   {"d": 4, "D": ["0.25", ...], "D0": [...], "f": [1, -1, ...],
///    "class": {"kind": "complete"} | {"kind": "explicit", "members": [[1, -1, ...], ...]},
///    "noisy_set": [..]}
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(std::string_view text);

/// {"epsilon": 0.1, "mode": "random", "seed": 7, "target": [...], "script": [[...], ...]}
std::string minimizer_to_json(const MinimizerSpec& spec);
MinimizerSpec minimizer_from_json(std::string_view text);

/// Experiment config; see docs/config.md. Throws ConfigError.
ExperimentConfig config_from_json(std::string_view text);
ExperimentConfig load_config(const std::string& path);

std::string to_json(const BenchmarkTrace& trace);
std::string to_json(const HierTrace& trace);
std::string to_json(const NoisyTrace& trace);
std::string to_json(const BoostRun& run);
std::string to_json(const HingeState& state);
std::string to_json(const PathWitness& witness, const WitnessReport& report);
std::string to_json(const HierWitness& witness, const WitnessReport& report);
std::string to_json(const RolloutSummary& summary);

/// CSV bodies start with "# dynbench <kind> v1" and a column header.
/// run_id,round,risk_ht_on_Dt,risk_ht_on_D,maj_risk,perfect_round
std::string path_csv_header();
std::string path_csv_rows(const BenchmarkTrace& trace, std::size_t run_id);
/// path columns plus delta_t,bound_t
std::string noisy_csv_header();
std::string noisy_csv_rows(const NoisyTrace& trace, std::size_t run_id);
/// node_path,step,risk; a node's majority appears with step "maj"
std::string hier_csv(const HierTrace& trace, const Instance& inst);
/// round,zero_one_risk,surrogate_risk,eta,weak_risk,Z
std::string boost_csv(const BoostRun& run);
/// round,zero_one_risk,hinge_risk,coefficient,certificate,error_mass
std::string hinge_csv(const HingeState& state);
/// run_id,seed,final_risk,z,perfect_round
std::string rollouts_csv(const RolloutSummary& summary);
/// round,mean_risk,stdev_risk
std::string rollout_series_csv(const RolloutSummary& summary);

std::string format_double(double value);

}  // namespace dynbench
