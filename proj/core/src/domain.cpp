#include "dynbench/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "dynbench/errors.hpp"

namespace dynbench {

namespace {

std::vector<double> normalized(std::vector<double> mass) {
    const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
    for (auto& m : mass) {
        m /= total;
    }
    return mass;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

// Visit every increasing (r-1)-tuple of cut positions in [1, d-1]; a cut at
// c starts a new run at point c.
void for_each_cut_set(std::size_t d, std::size_t cuts,
                      const std::function<void(const std::vector<std::size_t>&)>& visit) {
    std::vector<std::size_t> pos(cuts);
    if (cuts == 0) {
        visit(pos);
        return;
    }
    if (cuts > d - 1) {
        return;
    }
    std::iota(pos.begin(), pos.end(), std::size_t{1});
    while (true) {
        visit(pos);
        std::size_t i = cuts;
        while (i > 0 && pos[i - 1] == d - 1 - (cuts - i)) {
            --i;
        }
        if (i == 0) {
            return;
        }
        ++pos[i - 1];
        for (std::size_t j = i; j < cuts; ++j) {
            pos[j] = pos[j - 1] + 1;
        }
    }
}

}  // namespace

FiniteDomain::FiniteDomain(std::size_t size) : size_(size) {
    if (size == 0) {
        throw InvalidArgument("finite domain must have at least one point");
    }
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> mass) : mass_(std::move(mass)) {
    if (mass_.empty()) {
        throw InvalidArgument("distribution over an empty domain");
    }
    double total = 0.0;
    for (double m : mass_) {
        if (!(m >= 0.0) || !std::isfinite(m)) {
            throw InvalidArgument("distribution mass must be finite and non-negative");
        }
        total += m;
    }
    if (std::abs(total - 1.0) > kTolerance) {
        throw InvalidArgument("distribution mass sums to " + std::to_string(total) + ", not 1");
    }
}

PointSet DiscreteDistribution::support() const {
    PointSet out;
    for (Point x = 0; x < mass_.size(); ++x) {
        if (mass_[x] > 0.0) {
            out.push_back(x);
        }
    }
    return out;
}

Hypothesis::Hypothesis(std::vector<Label> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw InvalidArgument("hypothesis over an empty domain");
    }
    for (Label l : labels_) {
        if (l != 1 && l != -1) {
            throw InvalidArgument("hypothesis labels must be -1 or +1");
        }
    }
}

Hypothesis Hypothesis::constant(std::size_t size, Label label) {
    return Hypothesis(std::vector<Label>(size, label));
}

Hypothesis Hypothesis::flipped(const PointSet& points) const {
    auto labels = labels_;
    for (Point x : points) {
        if (x >= labels.size()) {
            throw InvalidArgument("flip point outside the domain");
        }
        labels[x] = static_cast<Label>(-labels[x]);
    }
    return Hypothesis(std::move(labels));
}

PointSet Hypothesis::disagreement(const Hypothesis& other) const {
    if (other.size() != size()) {
        throw InvalidArgument("hypotheses on different domains");
    }
    PointSet out;
    for (Point x = 0; x < labels_.size(); ++x) {
        if (labels_[x] != other.labels_[x]) {
            out.push_back(x);
        }
    }
    return out;
}

std::size_t Hypothesis::run_count() const {
    std::size_t runs = 1;
    for (std::size_t x = 1; x < labels_.size(); ++x) {
        if (labels_[x] != labels_[x - 1]) {
            ++runs;
        }
    }
    return runs;
}

HypothesisClass::HypothesisClass(ClassKind kind, std::size_t size, std::vector<Hypothesis> members)
    : kind_(kind), size_(size), members_(std::move(members)) {
    if (size_ == 0) {
        throw InvalidArgument("hypothesis class over an empty domain");
    }
}

HypothesisClass HypothesisClass::explicit_list(std::vector<Hypothesis> members) {
    if (members.empty()) {
        throw InvalidArgument("explicit hypothesis class must be non-empty");
    }
    const std::size_t d = members.front().size();
    std::set<Hypothesis> seen;
    for (const auto& h : members) {
        if (h.size() != d) {
            throw InvalidArgument("explicit class members live on different domains");
        }
        if (!seen.insert(h).second) {
            throw InvalidArgument("explicit hypothesis class contains duplicates");
        }
    }
    return HypothesisClass(ClassKind::Explicit, d, std::move(members));
}

HypothesisClass HypothesisClass::complete(std::size_t size) {
    return HypothesisClass(ClassKind::Complete, size, {});
}

HypothesisClass HypothesisClass::two_intervals(std::size_t size) {
    return HypothesisClass(ClassKind::TwoIntervals, size, {});
}

HypothesisClass HypothesisClass::three_intervals(std::size_t size) {
    return HypothesisClass(ClassKind::ThreeIntervals, size, {});
}

std::size_t HypothesisClass::interval_budget() const noexcept {
    switch (kind_) {
    case ClassKind::TwoIntervals:
        return 2;
    case ClassKind::ThreeIntervals:
        return 3;
    default:
        return 0;
    }
}

bool HypothesisClass::contains(const Hypothesis& h) const {
    if (h.size() != size_) {
        return false;
    }
    switch (kind_) {
    case ClassKind::Complete:
        return true;
    case ClassKind::Explicit:
        return std::find(members_.begin(), members_.end(), h) != members_.end();
    case ClassKind::TwoIntervals:
    case ClassKind::ThreeIntervals:
        return h.run_count() <= 2 * interval_budget() + 1;
    }
    return false;
}

bool HypothesisClass::enumerable() const noexcept {
    switch (kind_) {
    case ClassKind::Explicit:
        return true;
    case ClassKind::Complete:
        return size_ <= kCompleteEnumerationCap;
    case ClassKind::TwoIntervals:
    case ClassKind::ThreeIntervals:
        return size_ <= kIntervalEnumerationCap;
    }
    return false;
}

std::uint64_t HypothesisClass::count() const {
    if (!enumerable()) {
        throw NotEnumerable("hypothesis class over " + std::to_string(size_) +
                            " points exceeds the enumeration cap");
    }
    switch (kind_) {
    case ClassKind::Explicit:
        return members_.size();
    case ClassKind::Complete:
        return std::uint64_t{1} << size_;
    case ClassKind::TwoIntervals:
    case ClassKind::ThreeIntervals: {
        const std::size_t max_runs = std::min(size_, 2 * interval_budget() + 1);
        std::uint64_t total = 0;
        for (std::size_t r = 1; r <= max_runs; ++r) {
            total += binomial(size_ - 1, r - 1);
        }
        return 2 * total;
    }
    }
    return 0;
}

void HypothesisClass::for_each(const std::function<void(std::uint64_t, const Hypothesis&)>& visit) const {
    if (!enumerable()) {
        throw NotEnumerable("hypothesis class over " + std::to_string(size_) +
                            " points exceeds the enumeration cap");
    }
    switch (kind_) {
    case ClassKind::Explicit:
        for (std::uint64_t i = 0; i < members_.size(); ++i) {
            visit(i, members_[i]);
        }
        return;
    case ClassKind::Complete: {
        const std::uint64_t total = std::uint64_t{1} << size_;
        std::vector<Label> labels(size_);
        for (std::uint64_t i = 0; i < total; ++i) {
            for (std::size_t x = 0; x < size_; ++x) {
                labels[x] = ((i >> x) & 1U) ? Label{-1} : Label{1};
            }
            visit(i, Hypothesis(labels));
        }
        return;
    }
    case ClassKind::TwoIntervals:
    case ClassKind::ThreeIntervals: {
        // Canonical form: starting label, then the run boundaries.
        const std::size_t max_runs = std::min(size_, 2 * interval_budget() + 1);
        std::uint64_t index = 0;
        std::vector<Label> labels(size_);
        for (Label start : {Label{1}, Label{-1}}) {
            for (std::size_t runs = 1; runs <= max_runs; ++runs) {
                for_each_cut_set(size_, runs - 1, [&](const std::vector<std::size_t>& cuts) {
                    Label current = start;
                    std::size_t next_cut = 0;
                    for (std::size_t x = 0; x < size_; ++x) {
                        if (next_cut < cuts.size() && cuts[next_cut] == x) {
                            current = static_cast<Label>(-current);
                            ++next_cut;
                        }
                        labels[x] = current;
                    }
                    visit(index++, Hypothesis(labels));
                });
            }
        }
        return;
    }
    }
}

std::vector<Hypothesis> HypothesisClass::enumerate() const {
    std::vector<Hypothesis> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each([&](std::uint64_t, const Hypothesis& h) { out.push_back(h); });
    return out;
}

Instance::Instance(DiscreteDistribution underlying, DiscreteDistribution initial, Hypothesis truth,
                   HypothesisClass hypotheses, PointSet noisy)
    : underlying_(std::move(underlying)),
      initial_(std::move(initial)),
      truth_(std::move(truth)),
      class_(std::move(hypotheses)),
      noisy_(std::move(noisy)),
      noisy_mask_(underlying_.size(), 0) {
    const std::size_t d = underlying_.size();
    if (initial_.size() != d || truth_.size() != d || class_.domain_size() != d) {
        throw InvalidArgument("instance components live on different domains");
    }
    for (Point x = 0; x < d; ++x) {
        if (initial_[x] > 0.0 && !(underlying_[x] > 0.0)) {
            throw InvalidArgument("support of the initial distribution must lie within the underlying support");
        }
    }
    if (!std::is_sorted(noisy_.begin(), noisy_.end()) ||
        std::adjacent_find(noisy_.begin(), noisy_.end()) != noisy_.end()) {
        throw InvalidArgument("noisy set must be sorted and duplicate-free");
    }
    for (Point x : noisy_) {
        if (x >= d) {
            throw InvalidArgument("noisy point outside the domain");
        }
        noisy_mask_[x] = 1;
    }
    if (!class_.contains(truth_)) {
        throw InvalidArgument("true classifier is not a member of the hypothesis class");
    }
    if (!(noise_mass() < 1.0)) {
        throw InvalidArgument("noisy subset must carry less than all of the underlying mass");
    }
}

double Instance::noise_mass() const {
    return prob_of(underlying_, noisy_);
}

Instance Instance::with_initial(DiscreteDistribution initial) const {
    return Instance(underlying_, std::move(initial), truth_, class_, noisy_);
}

DiscreteDistribution uniform(FiniteDomain domain) {
    const std::size_t d = domain.size();
    return DiscreteDistribution(std::vector<double>(d, 1.0 / static_cast<double>(d)));
}

DiscreteDistribution mix(std::span<const DiscreteDistribution> components, std::span<const double> weights) {
    if (components.empty()) {
        throw InvalidArgument("mixture of zero components");
    }
    if (components.size() != weights.size()) {
        throw InvalidArgument("mixture weights do not match the number of components");
    }
    validate_weights(weights);
    const std::size_t d = components.front().size();
    std::vector<double> out(d, 0.0);
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (components[i].size() != d) {
            throw InvalidArgument("mixture components live on different domains");
        }
        const double w = weights[i];
        if (w == 0.0) {
            continue;
        }
        const auto mass = components[i].mass();
        for (std::size_t x = 0; x < d; ++x) {
            out[x] += w * mass[x];
        }
    }
    return DiscreteDistribution(normalized(std::move(out)));
}

DiscreteDistribution condition(const DiscreteDistribution& p, const PointSet& event) {
    const double total = prob_of(p, event);
    if (!(total > 0.0)) {
        throw ZeroMassEvent("conditioning event has zero probability");
    }
    std::vector<double> out(p.size(), 0.0);
    for (Point x : event) {
        out[x] = p[x];
    }
    return DiscreteDistribution(normalized(std::move(out)));
}

double prob_of(const DiscreteDistribution& p, const PointSet& event) {
    double total = 0.0;
    for (Point x : event) {
        if (x >= p.size()) {
            throw InvalidArgument("event point outside the domain");
        }
        total += p[x];
    }
    return total;
}

PointSet set_intersection(const PointSet& a, const PointSet& b) {
    PointSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

PointSet set_union(const PointSet& a, const PointSet& b) {
    PointSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_subset(const PointSet& inner, const PointSet& outer) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

void validate_weights(std::span<const double> weights, double tolerance) {
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw InvalidArgument("weights must be finite and non-negative");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > tolerance) {
        throw InvalidArgument("weights sum to " + std::to_string(total) + ", not 1");
    }
}

}  // namespace dynbench
