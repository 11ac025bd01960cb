#include "dynbench/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dynbench/errors.hpp"

namespace dynbench {

namespace {

constexpr std::uint64_t kPairEnumerationCap = 1ULL << 24;

void require_same_domain(std::size_t a, std::size_t b) {
    if (a != b) {
        throw InvalidArgument("operands live on different domains");
    }
}

}  // namespace

EnsembleVote::EnsembleVote(std::vector<Hypothesis> members, std::vector<double> weights)
    : members_(std::move(members)), weights_(std::move(weights)) {
    if (members_.empty()) {
        throw InvalidArgument("ensemble without members");
    }
    if (members_.size() != weights_.size()) {
        throw InvalidArgument("ensemble weights do not match members");
    }
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw InvalidArgument("ensemble weights must be finite and non-negative");
        }
        total += w;
    }
    if (!(total > 0.0)) {
        throw InvalidArgument("ensemble weights sum to zero");
    }
    for (auto& w : weights_) {
        w /= total;
    }
    const std::size_t d = members_.front().size();
    for (const auto& h : members_) {
        require_same_domain(h.size(), d);
    }
}

EnsembleVote EnsembleVote::uniform(std::vector<Hypothesis> members) {
    std::vector<double> weights(members.size(), 1.0);
    return EnsembleVote(std::move(members), std::move(weights));
}

PointSet error_set(const Hypothesis& h, const Instance& inst) {
    require_same_domain(h.size(), inst.size());
    const auto& f = inst.truth();
    PointSet out;
    for (Point x = 0; x < h.size(); ++x) {
        if (h[x] != f[x] && !inst.is_noisy(x)) {
            out.push_back(x);
        }
    }
    return out;
}

double risk_01(const Hypothesis& h, const DiscreteDistribution& p, const Instance& inst) {
    require_same_domain(h.size(), inst.size());
    require_same_domain(p.size(), inst.size());
    const auto& f = inst.truth();
    double realizable = 0.0;
    double noisy = 0.0;
    for (Point x = 0; x < h.size(); ++x) {
        if (inst.is_noisy(x)) {
            noisy += p[x];
        } else if (h[x] != f[x]) {
            realizable += p[x];
        }
    }
    return realizable + 0.5 * noisy;
}

double min_risk(const DiscreteDistribution& p, const Instance& inst) {
    return 0.5 * prob_of(p, inst.noisy_set());
}

Hypothesis majority(const EnsembleVote& vote) {
    const auto& members = vote.members();
    const auto& weights = vote.weights();
    const std::size_t d = members.front().size();
    std::vector<Label> labels(d);
    for (Point x = 0; x < d; ++x) {
        double score = 0.0;
        for (std::size_t i = 0; i < members.size(); ++i) {
            score += weights[i] * members[i][x];
        }
        // Rounding can leave an exact tie a few ulps below zero.
        labels[x] = score >= -1e-12 ? Label{1} : Label{-1};
    }
    return Hypothesis(std::move(labels));
}

Hypothesis majority(std::span<const Hypothesis> members) {
    return majority(EnsembleVote::uniform(std::vector<Hypothesis>(members.begin(), members.end())));
}

double total_variation(const DiscreteDistribution& p1, const DiscreteDistribution& p2) {
    require_same_domain(p1.size(), p2.size());
    double total = 0.0;
    for (Point x = 0; x < p1.size(); ++x) {
        total += std::abs(p1[x] - p2[x]);
    }
    return 0.5 * total;
}

double hdh_distance(const DiscreteDistribution& p1, const DiscreteDistribution& p2, const HypothesisClass& cls) {
    require_same_domain(p1.size(), cls.domain_size());
    require_same_domain(p2.size(), cls.domain_size());
    if (cls.kind() == ClassKind::Complete) {
        // Every subset is a disagreement region {h != h'} of some pair.
        return total_variation(p1, p2);
    }
    return hdh_distance_by_pairs(p1, p2, cls);
}

double hdh_distance_by_pairs(const DiscreteDistribution& p1, const DiscreteDistribution& p2,
                             const HypothesisClass& cls) {
    require_same_domain(p1.size(), cls.domain_size());
    require_same_domain(p2.size(), cls.domain_size());
    const std::uint64_t n = cls.count();
    if (n > 0 && n > kPairEnumerationCap / n) {
        throw NotEnumerable("too many hypothesis pairs to enumerate");
    }
    const auto members = cls.enumerate();
    const std::size_t d = cls.domain_size();
    // Signed per-point difference; the pair value is the sum over the disagreement region.
    std::vector<double> diff(d);
    for (Point x = 0; x < d; ++x) {
        diff[x] = p1[x] - p2[x];
    }
    double best = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = 0; j < members.size(); ++j) {
            double gap = 0.0;
            for (Point x = 0; x < d; ++x) {
                if (members[i][x] != members[j][x]) {
                    gap += diff[x];
                }
            }
            best = std::max(best, std::abs(gap));
        }
    }
    return best;
}

double joint_error_mass(const Hypothesis& h1, const Hypothesis& h2, const Instance& inst) {
    if (!inst.realizable()) {
        throw InvalidArgument("joint error mass is defined on realizable instances");
    }
    return prob_of(inst.underlying(), set_intersection(error_set(h1, inst), error_set(h2, inst)));
}

}  // namespace dynbench
