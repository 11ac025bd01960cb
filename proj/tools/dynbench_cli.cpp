#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dynbench/errors.hpp"
#include "dynbench/experiments.hpp"
#include "dynbench/hier_engine.hpp"
#include "dynbench/io.hpp"
#include "dynbench/measures.hpp"
#include "dynbench/noise_dynamics.hpp"
#include "dynbench/path_engine.hpp"
#include "dynbench/witnesses.hpp"

namespace {

using namespace dynbench;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBound = 3;
constexpr int kExitContract = 4;

struct Options {
    std::string config;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> rollouts;
    std::string format;
    std::optional<double> eps;
    std::optional<std::size_t> rounds;
    std::optional<std::size_t> depth;
    std::optional<std::size_t> width;
    std::size_t z_round = 4;
    std::string witness_kind = "path";
    bool intervals = false;
};

ExperimentConfig make_config(const Options& opt, std::optional<DesignKind> kind) {
    ExperimentConfig cfg;
    if (!opt.config.empty()) {
        cfg = load_config(opt.config);
    } else if (kind != DesignKind::Witness) {
        throw ConfigError("this subcommand needs --config");
    }
    if (opt.seed) {
        cfg.minimizer.seed = *opt.seed;
    }
    if (opt.eps) {
        cfg.minimizer.epsilon = *opt.eps;
        cfg.design.witness_epsilon = *opt.eps;
    }
    if (opt.rounds) {
        cfg.design.rounds = *opt.rounds;
    }
    if (opt.depth) {
        cfg.design.depth = *opt.depth;
    }
    if (opt.width) {
        cfg.design.width = *opt.width;
    }
    if (opt.rollouts) {
        cfg.rollouts = *opt.rollouts;
    }
    if (!opt.out_dir.empty()) {
        cfg.out_dir = opt.out_dir;
    }
    if (opt.format == "csv") {
        cfg.format = OutputFormat::Csv;
    } else if (opt.format == "json") {
        cfg.format = OutputFormat::Json;
    }
    cfg.z_round = opt.z_round;
    if (kind) {
        cfg.design.kind = *kind;
    }
    try {
        cfg.minimizer.validate();
        if (cfg.design.kind != DesignKind::Witness) {
            cfg.validate();
        }
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

void emit(const ExperimentConfig& cfg, const std::string& stem, const std::string& body) {
    if (cfg.out_dir.empty()) {
        std::cout << body;
        return;
    }
    std::filesystem::create_directories(cfg.out_dir);
    const auto path = std::filesystem::path(cfg.out_dir) / (stem + (cfg.format == OutputFormat::Json ? ".json" : ".csv"));
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    out << body;
}

PathConfig path_config(const DesignSpec& d) {
    return PathConfig{d.rounds, d.mixture, d.majority};
}

HierConfig hier_config(const DesignSpec& d) {
    return HierConfig{d.depth, d.width, d.mixture, d.majority};
}

int run_path_cmd(const Options& opt) {
    const auto cfg = make_config(opt, DesignKind::Path);
    const Instance inst = cfg.resolve_instance();
    std::string csv = path_csv_header();
    std::string json;
    for (std::size_t i = 0; i < cfg.rollouts; ++i) {
        MinimizerSpec spec = cfg.minimizer;
        spec.seed += i;
        Minimizer minimizer(spec);
        const auto trace = run_path(inst, minimizer, path_config(cfg.design));
        csv += path_csv_rows(trace, i);
        json += to_json(trace);
    }
    emit(cfg, "path", cfg.format == OutputFormat::Csv ? csv : json);
    return kExitOk;
}

int run_hier_cmd(const Options& opt) {
    const auto cfg = make_config(opt, DesignKind::Hier);
    if (cfg.design.depth > 2) {
        std::cerr << "warning: depth " << cfg.design.depth << " > 2 has no proven bound\n";
    }
    const Instance inst = cfg.resolve_instance();
    Minimizer minimizer(cfg.minimizer);
    const auto trace = run_hier(inst, minimizer, hier_config(cfg.design));
    emit(cfg, "hier", cfg.format == OutputFormat::Csv ? hier_csv(trace, inst) : to_json(trace));
    return kExitOk;
}

int run_noisy_cmd(const Options& opt) {
    const auto cfg = make_config(opt, DesignKind::Noisy);
    const Instance inst = cfg.resolve_instance();
    std::string csv = noisy_csv_header();
    std::string json;
    for (std::size_t i = 0; i < cfg.rollouts; ++i) {
        MinimizerSpec spec = cfg.minimizer;
        spec.seed += i;
        Minimizer minimizer(spec);
        const auto trace = run_noisy_path(inst, minimizer, cfg.design.rounds);
        for (const auto& w : trace.warnings) {
            if (i == 0) {
                std::cerr << "warning: " << w << '\n';
            }
        }
        csv += noisy_csv_rows(trace, i);
        json += to_json(trace);
    }
    emit(cfg, "noisy", cfg.format == OutputFormat::Csv ? csv : json);
    return kExitOk;
}

int run_boost_cmd(const Options& opt) {
    const auto cfg = make_config(opt, DesignKind::Boost);
    const Instance inst = cfg.resolve_instance();
    Minimizer minimizer(cfg.minimizer);
    if (cfg.design.loss == BoostLoss::Hinge) {
        const auto state = run_hinge(inst, minimizer, cfg.design.rounds, cfg.design.step);
        emit(cfg, "hinge", cfg.format == OutputFormat::Csv ? hinge_csv(state) : to_json(state));
        return kExitOk;
    }
    const auto run = run_boost(inst, minimizer, cfg.design.rounds);
    emit(cfg, "boost", cfg.format == OutputFormat::Csv ? boost_csv(run) : to_json(run));
    return kExitOk;
}

int witness_cmd(const Options& opt) {
    auto cfg = make_config(opt, DesignKind::Witness);
    if (opt.config.empty() && !opt.eps) {
        cfg.design.witness_epsilon = opt.witness_kind == "hier" ? 0.5 : 0.1;
    }
    if (opt.config.empty() && !opt.rounds && opt.witness_kind == "path") {
        cfg.design.rounds = 2 * inverse_of(cfg.design.witness_epsilon);
    }
    const auto cls = opt.intervals ? WitnessClass::Intervals : WitnessClass::Explicit;
    bool ok = false;
    std::string layout;
    std::string json;
    if (opt.witness_kind == "path") {
        const auto w = build_path_witness(cfg.design.witness_epsilon, cfg.design.rounds, std::nullopt,
                                          cfg.design.mixture, cls);
        Minimizer minimizer(w.minimizer);
        const auto trace = run_path(w.instance, minimizer, PathConfig{w.rounds, cfg.design.mixture, cfg.design.majority});
        const auto report = verify_witness(w, trace);
        ok = report.ok();
        layout = layout_text(w);
        json = to_json(w, report);
        layout += "observed majority risk " + format_double(report.majority_risk) + "\n";
        for (const auto& f : report.failures) {
            layout += "failure: " + f + "\n";
        }
    } else if (opt.witness_kind == "hier") {
        const auto w = build_hier_witness(cfg.design.witness_epsilon, std::nullopt, std::nullopt, cls);
        Minimizer minimizer(w.minimizer);
        const auto trace = run_hier(w.instance, minimizer, HierConfig{2, 3, cfg.design.mixture, cfg.design.majority});
        const auto report = verify_witness(w, trace);
        ok = report.ok();
        layout = layout_text(w);
        json = to_json(w, report);
        layout += "observed majority risk " + format_double(report.majority_risk) + "\n";
        for (const auto& f : report.failures) {
            layout += "failure: " + f + "\n";
        }
    } else {
        throw ConfigError("witness kind must be 'path' or 'hier'");
    }
    std::cout << layout;
    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        std::ofstream out(std::filesystem::path(cfg.out_dir) / ("witness_" + opt.witness_kind + ".json"),
                          std::ios::binary);
        out << json;
    }
    return ok ? kExitOk : kExitBound;
}

int rollouts_cmd(const Options& opt) {
    ExperimentConfig cfg = make_config(opt, std::nullopt);
    const auto summary = run_rollouts(cfg);
    if (cfg.format == OutputFormat::Json) {
        emit(cfg, "rollouts", to_json(summary));
        return kExitOk;
    }
    if (cfg.out_dir.empty()) {
        std::cout << rollouts_csv(summary) << rollout_series_csv(summary);
        return kExitOk;
    }
    emit(cfg, "rollouts", rollouts_csv(summary));
    emit(cfg, "rollout_series", rollout_series_csv(summary));
    return kExitOk;
}

std::string verdict(bool ok) {
    return ok ? "pass" : "FAIL";
}

int report_cmd(const Options& opt) {
    const auto cfg = make_config(opt, std::nullopt);
    bool all = true;
    auto line = [&](const std::string& name, bool ok, const std::string& detail) {
        std::cout << verdict(ok) << "  " << name << "  " << detail << '\n';
        all = all && ok;
    };
    const auto& d = cfg.design;
    if (d.kind == DesignKind::Witness) {
        Options w = opt;
        w.witness_kind = d.witness == WitnessKind::Path ? "path" : "hier";
        w.intervals = d.intervals;
        return witness_cmd(w);
    }
    const Instance inst = cfg.resolve_instance();
    Minimizer minimizer(cfg.minimizer);
    switch (d.kind) {
    case DesignKind::Path: {
        const auto trace = run_path(inst, minimizer, path_config(d));
        for (double alpha : {0.25, 0.5}) {
            line("bad-round count alpha=" + format_double(alpha), check_lemma1(trace, alpha), "");
        }
        if (trace.uniform_mixture && (trace.rounds.size() >= 3 || trace.perfect_round)) {
            const auto r = check_thm1_bound(inst, trace);
            line("three-round majority bound", r.holds,
                 "risk=" + format_double(r.risk) + " bound=" + format_double(r.bound));
        }
        break;
    }
    case DesignKind::Hier: {
        const auto trace = run_hier(inst, minimizer, hier_config(d));
        if (d.depth == 2 && d.width == 3 && trace.uniform_mixture && trace.uniform_majority) {
            const auto r = check_thm4_bound(inst, trace);
            line("depth-2 majority bound", r.holds,
                 "risk=" + format_double(r.risk) + " bound=" + format_double(r.bound));
        } else {
            std::cout << "skip  depth-2 majority bound  needs depth 2, width 3, uniform weights\n";
        }
        break;
    }
    case DesignKind::Noisy: {
        const auto trace = run_noisy_path(inst, minimizer, d.rounds);
        for (const auto& w : trace.warnings) {
            std::cerr << "warning: " << w << '\n';
        }
        line("clean error mass <= eps", trace.clean_constraint_holds(), "");
        if (trace.bounds_checked) {
            line("noise concentration bound", trace.bounds_hold(), "delta=" + format_double(trace.delta));
        }
        break;
    }
    case DesignKind::Boost:
        if (d.loss == BoostLoss::Exponential) {
            const auto run = run_boost(inst, minimizer, d.rounds);
            line("boosting rate bound", run.rate_holds, "");
            line("surrogate contraction", run.contraction_holds, "");
        } else {
            const auto state = run_hinge(inst, minimizer, d.rounds, d.step);
            bool monotone = true;
            for (const auto& s : state.history) {
                monotone = monotone && s.risk_after <= s.risk_before + 1e-12;
            }
            line("hinge risk non-increasing", monotone, "");
        }
        break;
    case DesignKind::Witness:
        break;
    }
    return all ? kExitOk : kExitBound;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic benchmarking simulator"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "Experiment config JSON");
        sub->add_option("--out-dir", opt.out_dir, "Directory for output files (stdout when omitted)");
        sub->add_option("--seed", opt.seed, "Minimizer seed");
        sub->add_option("--rollouts", opt.rollouts, "Number of rollouts");
        sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--eps", opt.eps, "Minimizer epsilon");
        sub->add_option("--rounds", opt.rounds, "Rounds");
        sub->add_option("--depth", opt.depth, "Hierarchy depth");
        sub->add_option("--width", opt.width, "Hierarchy width");
        sub->add_option("--z-round", opt.z_round, "Round horizon of the z score")->capture_default_str();
    };

    auto* path = app.add_subcommand("run-path", "Run a path benchmark");
    auto* hier = app.add_subcommand("run-hier", "Run a hierarchical benchmark");
    auto* noisy = app.add_subcommand("run-noisy", "Run a path benchmark with label noise");
    auto* boost = app.add_subcommand("run-boost", "Run gradient-based updates");
    auto* witness = app.add_subcommand("witness", "Build, run and verify a lower-bound witness");
    auto* rollouts = app.add_subcommand("rollouts", "Run seeded rollouts and summarize them");
    auto* report = app.add_subcommand("report", "Run a config and check its bounds");
    for (auto* sub : {path, hier, noisy, boost, witness, rollouts, report}) {
        add_common(sub);
    }
    witness->add_option("kind", opt.witness_kind, "path or hier")->check(CLI::IsMember({"path", "hier"}));
    witness->add_flag("--intervals", opt.intervals, "Use the interval class");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (path->parsed()) {
            return run_path_cmd(opt);
        }
        if (hier->parsed()) {
            return run_hier_cmd(opt);
        }
        if (noisy->parsed()) {
            return run_noisy_cmd(opt);
        }
        if (boost->parsed()) {
            return run_boost_cmd(opt);
        }
        if (witness->parsed()) {
            return witness_cmd(opt);
        }
        if (rollouts->parsed()) {
            return rollouts_cmd(opt);
        }
        if (report->parsed()) {
            return report_cmd(opt);
        }
    } catch (const ContractViolation& e) {
        std::cerr << "contract violation: " << e.what() << '\n';
        return kExitContract;
    } catch (const dynbench::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_FAILURE;
    }
    return kExitOk;
}
