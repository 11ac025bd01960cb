#include "dynbench/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dynbench/measures.hpp"

namespace dynbench {

using nlohmann::json;

namespace {

json labels_json(const Hypothesis& h) {
    json out = json::array();
    for (Label l : h.labels()) {
        out.push_back(static_cast<int>(l));
    }
    return out;
}

json masses_json(const DiscreteDistribution& p) {
    json out = json::array();
    for (double m : p.mass()) {
        out.push_back(m);
    }
    return out;
}

json exact_masses_json(const DiscreteDistribution& p) {
    json out = json::array();
    for (double m : p.mass()) {
        out.push_back(exact_decimal(m));
    }
    return out;
}

json optional_index(const std::optional<std::size_t>& v) {
    return v ? json(*v) : json(nullptr);
}

json optional_number(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

std::string csv_banner(const std::string& kind) {
    return "# dynbench " + kind + " v" + std::to_string(kCsvVersion) + "\n";
}

// ---- parsing helpers ----

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
    std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) {
        throw ConfigError(where + " is missing '" + key + "'");
    }
    return j.at(key);
}

double number_of(const json& v, const std::string& what) {
    if (v.is_string()) {
        return parse_decimal(v.get<std::string>());
    }
    if (!v.is_number()) {
        throw ConfigError(what + " must be a number or a decimal string");
    }
    return v.get<double>();
}

std::size_t count_of(const json& v, const std::string& what) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(what + " must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

std::uint64_t seed_of(const json& v, const std::string& what) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)) {
        throw ConfigError(what + " must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

std::vector<double> numbers_of(const json& v, const std::string& what) {
    if (!v.is_array()) {
        throw ConfigError(what + " must be an array");
    }
    std::vector<double> out;
    for (const auto& x : v) {
        out.push_back(number_of(x, what));
    }
    return out;
}

Hypothesis hypothesis_of(const json& v, const std::string& what) {
    if (!v.is_array()) {
        throw ConfigError(what + " must be an array of +-1 labels");
    }
    std::vector<Label> labels;
    for (const auto& x : v) {
        if (!x.is_number_integer() || (x.get<int>() != 1 && x.get<int>() != -1)) {
            throw ConfigError(what + " must contain only +1 and -1");
        }
        labels.push_back(static_cast<Label>(x.get<int>()));
    }
    return Hypothesis(std::move(labels));
}

PointSet points_of(const json& v, const std::string& what) {
    if (!v.is_array()) {
        throw ConfigError(what + " must be an array of point indices");
    }
    PointSet out;
    for (const auto& x : v) {
        out.push_back(count_of(x, what));
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
        throw ConfigError(what + " has duplicate points");
    }
    return out;
}

json parse_text(std::string_view text, const std::string& what) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(what + " is not valid JSON: " + e.what());
    }
}

std::string kind_name(ClassKind kind) {
    switch (kind) {
    case ClassKind::Explicit:
        return "explicit";
    case ClassKind::Complete:
        return "complete";
    case ClassKind::TwoIntervals:
        return "two_intervals";
    case ClassKind::ThreeIntervals:
        return "three_intervals";
    }
    return "unknown";
}

ClassKind class_kind_of(const std::string& name) {
    static const std::map<std::string, ClassKind> kinds{{"explicit", ClassKind::Explicit},
                                                        {"complete", ClassKind::Complete},
                                                        {"two_intervals", ClassKind::TwoIntervals},
                                                        {"three_intervals", ClassKind::ThreeIntervals}};
    auto it = kinds.find(name);
    if (it == kinds.end()) {
        throw ConfigError("unknown class kind '" + name + "'");
    }
    return it->second;
}

std::string mode_name(MinimizerMode mode) {
    switch (mode) {
    case MinimizerMode::Perfect:
        return "perfect";
    case MinimizerMode::RandomApprox:
        return "random";
    case MinimizerMode::AdversarialApprox:
        return "adversarial";
    case MinimizerMode::Scripted:
        return "scripted";
    }
    return "unknown";
}

Instance instance_of(const json& j) {
    const std::string where = "instance";
    if (!j.is_object()) {
        throw ConfigError("instance must be an object");
    }
    reject_unknown(j, {"d", "D", "D0", "f", "class", "noisy_set"}, where);
    const std::size_t d = count_of(require(j, "d", where), "d");
    auto underlying = numbers_of(require(j, "D", where), "D");
    auto initial = j.contains("D0") ? numbers_of(j.at("D0"), "D0") : underlying;
    Hypothesis truth = hypothesis_of(require(j, "f", where), "f");
    if (underlying.size() != d || initial.size() != d || truth.size() != d) {
        throw ConfigError("D, D0 and f must have d entries");
    }
    const json& cls = require(j, "class", where);
    if (!cls.is_object()) {
        throw ConfigError("class must be an object");
    }
    reject_unknown(cls, {"kind", "members"}, "class");
    const ClassKind kind = class_kind_of(require(cls, "kind", "class").get<std::string>());
    std::optional<HypothesisClass> hc;
    switch (kind) {
    case ClassKind::Explicit: {
        std::vector<Hypothesis> members;
        for (const auto& m : require(cls, "members", "class")) {
            members.push_back(hypothesis_of(m, "class member"));
        }
        hc = HypothesisClass::explicit_list(std::move(members));
        break;
    }
    case ClassKind::Complete:
        hc = HypothesisClass::complete(d);
        break;
    case ClassKind::TwoIntervals:
        hc = HypothesisClass::two_intervals(d);
        break;
    case ClassKind::ThreeIntervals:
        hc = HypothesisClass::three_intervals(d);
        break;
    }
    PointSet noisy = j.contains("noisy_set") ? points_of(j.at("noisy_set"), "noisy_set") : PointSet{};
    try {
        return Instance(DiscreteDistribution(std::move(underlying)), DiscreteDistribution(std::move(initial)),
                        std::move(truth), std::move(*hc), std::move(noisy));
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("invalid instance: ") + e.what());
    }
}

MinimizerSpec minimizer_of(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("minimizer must be an object");
    }
    reject_unknown(j, {"epsilon", "mode", "seed", "target", "script"}, "minimizer");
    MinimizerSpec spec;
    if (j.contains("epsilon")) {
        spec.epsilon = number_of(j.at("epsilon"), "minimizer epsilon");
    }
    const std::string mode = j.value("mode", std::string("perfect"));
    if (mode == "perfect") {
        spec.mode = MinimizerMode::Perfect;
    } else if (mode == "random") {
        spec.mode = MinimizerMode::RandomApprox;
    } else if (mode == "adversarial") {
        spec.mode = MinimizerMode::AdversarialApprox;
    } else if (mode == "scripted") {
        spec.mode = MinimizerMode::Scripted;
    } else {
        throw ConfigError("unknown minimizer mode '" + mode + "'");
    }
    if (j.contains("seed")) {
        spec.seed = seed_of(j.at("seed"), "minimizer seed");
    }
    if (j.contains("target")) {
        spec.target = points_of(j.at("target"), "minimizer target");
    }
    if (j.contains("script")) {
        for (const auto& h : j.at("script")) {
            spec.script.push_back(hypothesis_of(h, "script entry"));
        }
    }
    try {
        spec.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    return spec;
}

WeightPolicy policy_of(const json& j, const std::string& where) {
    if (!j.is_object()) {
        throw ConfigError(where + " must be an object");
    }
    reject_unknown(j, {"policy", "weights", "seed"}, where);
    const std::string policy = j.value("policy", std::string("uniform"));
    if (policy == "uniform") {
        return WeightPolicy::uniform();
    }
    if (policy == "random") {
        return WeightPolicy::random_simplex(j.contains("seed") ? seed_of(j.at("seed"), where + " seed") : 0);
    }
    if (policy == "explicit") {
        std::vector<std::vector<double>> weights;
        const json& w = require(j, "weights", where);
        if (!w.is_array()) {
            throw ConfigError(where + " weights must be an array of arrays");
        }
        for (const auto& row : w) {
            weights.push_back(numbers_of(row, where + " weights"));
        }
        return WeightPolicy::explicit_weights(std::move(weights));
    }
    throw ConfigError("unknown weight policy '" + policy + "' in " + where);
}

GeneratorSpec generator_of(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("generator must be an object");
    }
    reject_unknown(j, {"d", "class", "underlying", "initial", "truth", "noisy_points", "noise_mass", "seed"},
                   "generator");
    GeneratorSpec g;
    g.dimension = count_of(require(j, "d", "generator"), "generator d");
    g.kind = class_kind_of(j.value("class", std::string("complete")));
    const std::string underlying = j.value("underlying", std::string("uniform"));
    if (underlying == "uniform") {
        g.underlying = GeneratorSpec::Shape::Uniform;
    } else if (underlying == "random") {
        g.underlying = GeneratorSpec::Shape::Random;
    } else {
        throw ConfigError("generator underlying must be 'uniform' or 'random'");
    }
    const std::string initial = j.value("initial", std::string("same"));
    if (initial == "same") {
        g.initial = GeneratorSpec::Initial::Same;
    } else if (initial == "uniform") {
        g.initial = GeneratorSpec::Initial::Uniform;
    } else if (initial == "random") {
        g.initial = GeneratorSpec::Initial::Random;
    } else {
        throw ConfigError("generator initial must be 'same', 'uniform' or 'random'");
    }
    const std::string truth = j.value("truth", std::string("random"));
    if (truth == "random") {
        g.truth = GeneratorSpec::Truth::Random;
    } else if (truth == "positive") {
        g.truth = GeneratorSpec::Truth::Positive;
    } else {
        throw ConfigError("generator truth must be 'random' or 'positive'");
    }
    if (j.contains("noisy_points")) {
        g.noisy_points = count_of(j.at("noisy_points"), "generator noisy_points");
    }
    if (j.contains("noise_mass")) {
        g.noise_mass = number_of(j.at("noise_mass"), "generator noise_mass");
    }
    if (j.contains("seed")) {
        g.seed = seed_of(j.at("seed"), "generator seed");
    }
    return g;
}

DesignSpec design_of(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("design must be an object");
    }
    reject_unknown(j, {"kind", "rounds", "depth", "width", "mixture", "majority", "loss", "step", "witness", "epsilon",
                       "intervals"},
                   "design");
    DesignSpec d;
    const std::string kind = j.value("kind", std::string("path"));
    static const std::map<std::string, DesignKind> kinds{{"path", DesignKind::Path},
                                                         {"hier", DesignKind::Hier},
                                                         {"noisy", DesignKind::Noisy},
                                                         {"boost", DesignKind::Boost},
                                                         {"witness", DesignKind::Witness}};
    auto it = kinds.find(kind);
    if (it == kinds.end()) {
        throw ConfigError("unknown design kind '" + kind + "'");
    }
    d.kind = it->second;
    if (j.contains("rounds")) {
        d.rounds = count_of(j.at("rounds"), "design rounds");
    }
    if (j.contains("depth")) {
        d.depth = count_of(j.at("depth"), "design depth");
    }
    if (j.contains("width")) {
        d.width = count_of(j.at("width"), "design width");
    }
    if (j.contains("mixture")) {
        d.mixture = policy_of(j.at("mixture"), "mixture");
    }
    if (j.contains("majority")) {
        d.majority = policy_of(j.at("majority"), "majority");
    }
    const std::string loss = j.value("loss", std::string("exp"));
    if (loss == "exp") {
        d.loss = BoostLoss::Exponential;
    } else if (loss == "hinge") {
        d.loss = BoostLoss::Hinge;
    } else {
        throw ConfigError("design loss must be 'exp' or 'hinge'");
    }
    if (j.contains("step")) {
        d.step = number_of(j.at("step"), "design step");
    }
    const std::string witness = j.value("witness", std::string("path"));
    if (witness == "path") {
        d.witness = WitnessKind::Path;
    } else if (witness == "hier") {
        d.witness = WitnessKind::Hier;
    } else {
        throw ConfigError("design witness must be 'path' or 'hier'");
    }
    if (j.contains("epsilon")) {
        d.witness_epsilon = number_of(j.at("epsilon"), "design epsilon");
    }
    d.intervals = j.value("intervals", false);
    return d;
}

json hier_node_json(const HierNode& node) {
    json steps = json::array();
    for (const auto& s : node.steps) {
        json step{
            {"atoms", s.atoms},
            {"classifier", labels_json(s.classifier)},
            {"errors", s.errors},
            {"risk_on_underlying", s.risk_on_underlying},
            {"error_atom", optional_index(s.error_atom)},
            {"leaf", optional_index(s.leaf)},
        };
        step["child"] = s.subtree.empty() ? json(nullptr) : hier_node_json(s.subtree.front());
        steps.push_back(std::move(step));
    }
    return {
        {"path", node.path},
        {"depth", node.depth},
        {"inherited_atoms", node.inherited_atoms},
        {"majority_weights", node.majority_weights},
        {"output", labels_json(node.output)},
        {"early_success", node.early_success},
        {"steps", std::move(steps)},
    };
}

void hier_rows(std::ostringstream& out, const HierNode& node, const Instance& inst) {
    for (std::size_t t = 0; t < node.steps.size(); ++t) {
        const auto& s = node.steps[t];
        if (!s.subtree.empty()) {
            hier_rows(out, s.subtree.front(), inst);
        }
        out << node.path << ',' << t << ',' << format_double(s.risk_on_underlying) << '\n';
    }
    out << node.path << ",maj," << format_double(risk_01(node.output, inst.underlying(), inst)) << '\n';
}

json report_json(const WitnessReport& r) {
    json steps = json::array();
    for (const auto& s : r.steps) {
        steps.push_back({{"label", s.label},
                         {"closed_form", s.closed_form},
                         {"engine_risk", s.engine_risk},
                         {"agrees", s.agrees},
                         {"consistent", s.consistent}});
    }
    return {
        {"steps", std::move(steps)},   {"common_error", r.common_error},   {"tallies_ok", r.tallies_ok},
        {"majority_risk", r.majority_risk}, {"claimed_risk", r.claimed_risk}, {"attains", r.attains},
        {"failures", r.failures},      {"ok", r.ok()},
    };
}

json blocks_json(const std::vector<PointSet>& blocks) {
    json out = json::array();
    for (const auto& b : blocks) {
        out.push_back({{"points", b}, {"coordinates", proof_coordinates(b)}});
    }
    return out;
}

}  // namespace

std::string exact_decimal(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

double parse_decimal(std::string_view text) {
    double value = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw ConfigError("'" + std::string(text) + "' is not a decimal number");
    }
    return value;
}

std::string format_double(double value) {
    return exact_decimal(value);
}

std::string instance_to_json(const Instance& inst) {
    json cls{{"kind", kind_name(inst.hypotheses().kind())}};
    if (inst.hypotheses().kind() == ClassKind::Explicit) {
        json members = json::array();
        for (const auto& h : inst.hypotheses().members()) {
            members.push_back(labels_json(h));
        }
        cls["members"] = std::move(members);
    }
    json j{
        {"d", inst.size()},
        {"D", exact_masses_json(inst.underlying())},
        {"D0", exact_masses_json(inst.initial())},
        {"f", labels_json(inst.truth())},
        {"class", std::move(cls)},
        {"noisy_set", inst.noisy_set()},
    };
    return j.dump(2) + "\n";
}

Instance instance_from_json(std::string_view text) {
    return instance_of(parse_text(text, "instance"));
}

std::string minimizer_to_json(const MinimizerSpec& spec) {
    json j{{"epsilon", spec.epsilon}, {"mode", mode_name(spec.mode)}, {"seed", spec.seed}};
    if (!spec.target.empty()) {
        j["target"] = spec.target;
    }
    if (!spec.script.empty()) {
        json script = json::array();
        for (const auto& h : spec.script) {
            script.push_back(labels_json(h));
        }
        j["script"] = std::move(script);
    }
    return j.dump() + "\n";
}

MinimizerSpec minimizer_from_json(std::string_view text) {
    return minimizer_of(parse_text(text, "minimizer"));
}

ExperimentConfig config_from_json(std::string_view text) {
    const json j = parse_text(text, "config");
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    reject_unknown(j, {"instance", "instance_file", "generator", "minimizer", "design", "rollouts", "z_round", "output"},
                   "config");
    ExperimentConfig cfg;
    if (j.contains("instance")) {
        cfg.instance = instance_of(j.at("instance"));
    }
    if (j.contains("generator")) {
        cfg.generator = generator_of(j.at("generator"));
    }
    if (j.contains("minimizer")) {
        cfg.minimizer = minimizer_of(j.at("minimizer"));
    }
    if (j.contains("design")) {
        cfg.design = design_of(j.at("design"));
    }
    if (j.contains("rollouts")) {
        cfg.rollouts = count_of(j.at("rollouts"), "rollouts");
    }
    if (j.contains("z_round")) {
        cfg.z_round = count_of(j.at("z_round"), "z_round");
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        reject_unknown(o, {"dir", "format"}, "output");
        cfg.out_dir = o.value("dir", std::string());
        const std::string format = o.value("format", std::string("csv"));
        if (format == "csv") {
            cfg.format = OutputFormat::Csv;
        } else if (format == "json") {
            cfg.format = OutputFormat::Json;
        } else {
            throw ConfigError("output format must be 'csv' or 'json'");
        }
    }
    if (j.contains("instance_file")) {
        // Resolved by load_config relative to the config file.
        if (!j.at("instance_file").is_string()) {
            throw ConfigError("instance_file must be a path string");
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    ExperimentConfig cfg = config_from_json(text);
    const json j = parse_text(text, "config");
    if (j.contains("instance_file")) {
        std::filesystem::path file = j.at("instance_file").get<std::string>();
        if (file.is_relative()) {
            file = std::filesystem::path(path).parent_path() / file;
        }
        std::ifstream inst_in(file);
        if (!inst_in) {
            throw ConfigError("cannot read instance file '" + file.string() + "'");
        }
        std::stringstream inst_buf;
        inst_buf << inst_in.rdbuf();
        cfg.instance = instance_from_json(inst_buf.str());
    }
    try {
        cfg.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

std::string to_json(const BenchmarkTrace& trace) {
    json rounds = json::array();
    for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
        const auto& r = trace.rounds[t];
        rounds.push_back({
            {"round", t},
            {"weights", r.weights},
            {"distribution", masses_json(r.distribution)},
            {"classifier", labels_json(r.classifier)},
            {"errors", r.errors},
            {"risk_on_distribution", r.risk_on_distribution},
            {"minimum_on_distribution", r.minimum_on_distribution},
            {"risk_on_underlying", r.risk_on_underlying},
            {"majority_risk", r.majority_risk},
        });
    }
    json errors = json::array();
    for (const auto& e : trace.error_distributions) {
        errors.push_back(masses_json(e));
    }
    json j{
        {"kind", "path"},
        {"version", kCsvVersion},
        {"epsilon", trace.epsilon},
        {"configured_rounds", trace.configured_rounds},
        {"perfect_round", optional_index(trace.perfect_round)},
        {"uniform_mixture", trace.uniform_mixture},
        {"majority_weights", trace.majority_weights},
        {"rounds", std::move(rounds)},
        {"error_distributions", std::move(errors)},
    };
    return j.dump(2) + "\n";
}

std::string to_json(const HierTrace& trace) {
    json atoms = json::array();
    for (const auto& a : trace.atoms) {
        atoms.push_back({{"label", a.label},
                         {"initial", a.initial},
                         {"source_errors", a.source_errors},
                         {"distribution", masses_json(a.distribution)}});
    }
    json leaves = json::array();
    for (const auto& l : trace.leaves) {
        leaves.push_back({
            {"node_path", l.node_path},
            {"step", l.step},
            {"atoms", l.atoms},
            {"weights", l.weights},
            {"classifier", labels_json(l.classifier)},
            {"risk_on_distribution", l.risk_on_distribution},
            {"minimum_on_distribution", l.minimum_on_distribution},
            {"risk_on_underlying", l.risk_on_underlying},
        });
    }
    json j{
        {"kind", "hier"},
        {"version", kCsvVersion},
        {"depth", trace.depth},
        {"width", trace.width},
        {"epsilon", trace.epsilon},
        {"uniform_mixture", trace.uniform_mixture},
        {"uniform_majority", trace.uniform_majority},
        {"atoms", std::move(atoms)},
        {"leaves", std::move(leaves)},
        {"root", hier_node_json(trace.root)},
    };
    return j.dump(2) + "\n";
}

std::string to_json(const NoisyTrace& trace) {
    json rounds = json::array();
    for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
        const auto& r = trace.rounds[t];
        rounds.push_back({
            {"round", t},
            {"weights", r.weights},
            {"distribution", masses_json(r.distribution)},
            {"classifier", labels_json(r.classifier)},
            {"errors", r.errors},
            {"delta_t", r.noise_share},
            {"realizable_mass", r.realizable_mass},
            {"realizable_risk", r.realizable_risk},
            {"noisy_risk", r.noisy_risk},
            {"risk_on_distribution", r.risk_on_distribution},
            {"risk_on_underlying", r.risk_on_underlying},
            {"majority_risk", r.majority_risk},
            {"bound", optional_number(r.bound)},
            {"error_noise_weight", r.error_noise_weight},
            {"error_distribution",
             r.error_distribution ? masses_json(*r.error_distribution) : json(nullptr)},
        });
    }
    json j{
        {"kind", "noisy"},
        {"version", kCsvVersion},
        {"delta", trace.delta},
        {"epsilon", trace.epsilon},
        {"delta_dominant", trace.delta_dominant},
        {"bounds_checked", trace.bounds_checked},
        {"bounds_hold", trace.bounds_hold()},
        {"perfect_round", optional_index(trace.perfect_round)},
        {"warnings", trace.warnings},
        {"rounds", std::move(rounds)},
    };
    return j.dump(2) + "\n";
}

std::string to_json(const BoostRun& run) {
    json steps = json::array();
    for (std::size_t t = 0; t < run.state.history.size(); ++t) {
        const auto& s = run.state.history[t];
        steps.push_back({
            {"round", t + 1},
            {"status", s.status == StepStatus::PerfectWeakLearner ? "perfect_weak_learner" : "updated"},
            {"weak", labels_json(s.weak)},
            {"weak_risk", s.weak_risk},
            {"eta", std::isfinite(s.eta) ? json(s.eta) : json("inf")},
            {"Z", s.normalizer},
            {"surrogate_after", s.surrogate_after},
            {"predicted_after", s.predicted_after},
            {"zero_one_after", s.zero_one_after},
            {"rate_bound", s.rate_bound},
        });
    }
    json j{
        {"kind", "boost"},
        {"version", kCsvVersion},
        {"scores", std::vector<double>(run.state.h.values().begin(), run.state.h.values().end())},
        {"exact", run.state.exact ? labels_json(*run.state.exact) : json(nullptr)},
        {"rate_holds", run.rate_holds},
        {"contraction_holds", run.contraction_holds},
        {"steps", std::move(steps)},
    };
    return j.dump(2) + "\n";
}

std::string to_json(const HingeState& state) {
    json steps = json::array();
    for (std::size_t t = 0; t < state.history.size(); ++t) {
        const auto& s = state.history[t];
        steps.push_back({
            {"round", t + 1},
            {"status", s.status == StepStatus::Converged ? "converged" : "updated"},
            {"direction", s.direction ? labels_json(*s.direction) : json(nullptr)},
            {"error_mass", s.error_mass},
            {"certificate", s.certificate},
            {"coefficient", s.coefficient},
            {"risk_before", s.risk_before},
            {"risk_after", s.risk_after},
            {"zero_one_after", s.zero_one_after},
        });
    }
    json j{
        {"kind", "hinge"},
        {"version", kCsvVersion},
        {"scores", std::vector<double>(state.h.values().begin(), state.h.values().end())},
        {"converged", state.converged},
        {"steps", std::move(steps)},
    };
    return j.dump(2) + "\n";
}

std::string to_json(const PathWitness& w, const WitnessReport& report) {
    json tallies = json::array();
    for (std::size_t i = 0; i < w.tallies.size(); ++i) {
        tallies.push_back({{"round", w.horizon + i}, {"phi", w.assignment[i]}, {"vbar", w.tallies[i]}});
    }
    json j{
        {"kind", "path_witness"},
        {"version", kCsvVersion},
        {"epsilon", w.epsilon},
        {"d", w.dimension},
        {"k", w.common_size},
        {"k_prime", w.block_size},
        {"T", w.horizon},
        {"L", w.rounds},
        {"class", kind_name(w.instance.hypotheses().kind())},
        {"common", {{"points", w.common}, {"coordinates", proof_coordinates(w.common)}}},
        {"blocks", blocks_json(w.blocks)},
        {"phi", std::move(tallies)},
        {"claimed_risk", w.claimed_risk},
        {"report", report_json(report)},
    };
    return j.dump(2) + "\n";
}

std::string to_json(const HierWitness& w, const WitnessReport& report) {
    json j{
        {"kind", "hier_witness"},
        {"version", kCsvVersion},
        {"epsilon", w.epsilon},
        {"d", w.dimension},
        {"extrapolated", w.extrapolated},
        {"class", kind_name(w.instance.hypotheses().kind())},
        {"common", {{"points", w.common}, {"coordinates", proof_coordinates(w.common)}}},
        {"blocks", blocks_json(w.blocks)},
        {"group_blocks", blocks_json(w.group_blocks)},
        {"claimed_risk", w.claimed_risk},
        {"report", report_json(report)},
    };
    return j.dump(2) + "\n";
}

std::string to_json(const RolloutSummary& s) {
    json rollouts = json::array();
    for (const auto& r : s.rollouts) {
        rollouts.push_back({
            {"run_id", r.index},
            {"seed", r.seed},
            {"series", r.series},
            {"final_risk", r.final_risk},
            {"z", optional_number(r.z)},
            {"perfect_round", optional_index(r.perfect_round)},
        });
    }
    json j{
        {"kind", "rollouts"},
        {"version", kCsvVersion},
        {"z_round", s.z_round},
        {"mean", s.mean},
        {"stdev", s.stdev},
        {"correlation", optional_number(s.correlation)},
        {"rollouts", std::move(rollouts)},
    };
    return j.dump(2) + "\n";
}

std::string path_csv_header() {
    return csv_banner("path") + "run_id,round,risk_ht_on_Dt,risk_ht_on_D,maj_risk,perfect_round\n";
}

std::string path_csv_rows(const BenchmarkTrace& trace, std::size_t run_id) {
    std::ostringstream out;
    for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
        const auto& r = trace.rounds[t];
        out << run_id << ',' << t << ',' << format_double(r.risk_on_distribution) << ','
            << format_double(r.risk_on_underlying) << ',' << format_double(r.majority_risk) << ','
            << (trace.perfect_round == t ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string noisy_csv_header() {
    return csv_banner("noisy") + "run_id,round,risk_ht_on_Dt,risk_ht_on_D,maj_risk,perfect_round,delta_t,bound_t\n";
}

std::string noisy_csv_rows(const NoisyTrace& trace, std::size_t run_id) {
    std::ostringstream out;
    for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
        const auto& r = trace.rounds[t];
        out << run_id << ',' << t << ',' << format_double(r.risk_on_distribution) << ','
            << format_double(r.risk_on_underlying) << ',' << format_double(r.majority_risk) << ','
            << (trace.perfect_round == t ? 1 : 0) << ',' << format_double(r.noise_share) << ','
            << (r.bound ? format_double(*r.bound) : std::string()) << '\n';
    }
    return out.str();
}

std::string hier_csv(const HierTrace& trace, const Instance& inst) {
    std::ostringstream out;
    out << csv_banner("hier") << "node_path,step,risk\n";
    hier_rows(out, trace.root, inst);
    return out.str();
}

std::string boost_csv(const BoostRun& run) {
    std::ostringstream out;
    out << csv_banner("boost") << "round,zero_one_risk,surrogate_risk,eta,weak_risk,Z\n";
    for (std::size_t t = 0; t < run.state.history.size(); ++t) {
        const auto& s = run.state.history[t];
        out << t + 1 << ',' << format_double(s.zero_one_after) << ',' << format_double(s.surrogate_after) << ','
            << format_double(s.eta) << ',' << format_double(s.weak_risk) << ',' << format_double(s.normalizer)
            << '\n';
    }
    return out.str();
}

std::string hinge_csv(const HingeState& state) {
    std::ostringstream out;
    out << csv_banner("hinge") << "round,zero_one_risk,hinge_risk,coefficient,certificate,error_mass\n";
    for (std::size_t t = 0; t < state.history.size(); ++t) {
        const auto& s = state.history[t];
        out << t + 1 << ',' << format_double(s.zero_one_after) << ',' << format_double(s.risk_after) << ','
            << format_double(s.coefficient) << ',' << format_double(s.certificate) << ','
            << format_double(s.error_mass) << '\n';
    }
    return out.str();
}

std::string rollouts_csv(const RolloutSummary& summary) {
    std::ostringstream out;
    out << csv_banner("rollouts") << "run_id,seed,final_risk,z,perfect_round\n";
    for (const auto& r : summary.rollouts) {
        out << r.index << ',' << r.seed << ',' << format_double(r.final_risk) << ','
            << (r.z ? format_double(*r.z) : std::string()) << ','
            << (r.perfect_round ? std::to_string(*r.perfect_round) : std::string()) << '\n';
    }
    return out.str();
}

std::string rollout_series_csv(const RolloutSummary& summary) {
    std::ostringstream out;
    out << csv_banner("rollout-series") << "round,mean_risk,stdev_risk\n";
    for (std::size_t t = 0; t < summary.mean.size(); ++t) {
        out << t << ',' << format_double(summary.mean[t]) << ',' << format_double(summary.stdev[t]) << '\n';
    }
    return out.str();
}

}  // namespace dynbench
