#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace dynbench {

/// Index of a point in a finite domain, 0-based.
using Point = std::size_t;

/// Subset of a finite domain: sorted, duplicate-free point indices.
using PointSet = std::vector<Point>;

/// Labels are exactly -1 or +1.
using Label = std::int8_t;

class FiniteDomain {
public:
    explicit FiniteDomain(std::size_t size);

    std::size_t size() const noexcept { return size_; }

    bool operator==(const FiniteDomain&) const = default;

private:
    std::size_t size_;
};

/// Exact probability vector over {0, ..., d-1}.
class DiscreteDistribution {
public:
    /// Absolute tolerance on the total mass.
    static constexpr double kTolerance = 1e-12;

    /// Validates non-negativity and normalization; the masses are stored as given.
    explicit DiscreteDistribution(std::vector<double> mass);

    std::size_t size() const noexcept { return mass_.size(); }
    FiniteDomain domain() const { return FiniteDomain(mass_.size()); }

    double operator[](Point x) const { return mass_[x]; }
    std::span<const double> mass() const noexcept { return mass_; }

    /// Points with strictly positive mass.
    PointSet support() const;

    bool operator==(const DiscreteDistribution&) const = default;

private:
    std::vector<double> mass_;
};

/// A +-1 labeling of the domain.
class Hypothesis {
public:
    explicit Hypothesis(std::vector<Label> labels);

    static Hypothesis constant(std::size_t size, Label label);

    std::size_t size() const noexcept { return labels_.size(); }
    Label operator[](Point x) const { return labels_[x]; }
    std::span<const Label> labels() const noexcept { return labels_; }

    /// Copy with the labels on `points` negated.
    Hypothesis flipped(const PointSet& points) const;

    /// Points where the two labelings differ.
    PointSet disagreement(const Hypothesis& other) const;

    /// Number of maximal runs of equal labels in index order.
    std::size_t run_count() const;

    auto operator<=>(const Hypothesis&) const = default;

private:
    std::vector<Label> labels_;
};

enum class ClassKind { Explicit, Complete, TwoIntervals, ThreeIntervals };

/// A hypothesis class over a finite ordered domain.
///
/// Complete(d) holds all 2^d labelings; member i labels x with -1 iff bit x
/// of i is set, so index 0 is the all-(+1) labeling. The interval kinds
/// hold every labeling obtained from a constant labeling by flipping at
/// most two (three) contiguous index intervals; equivalently, labelings
/// with at most 5 (7) runs.
class HypothesisClass {
public:
    static constexpr std::size_t kCompleteEnumerationCap = 20;
    static constexpr std::size_t kIntervalEnumerationCap = 64;

    static HypothesisClass explicit_list(std::vector<Hypothesis> members);
    static HypothesisClass complete(std::size_t size);
    static HypothesisClass two_intervals(std::size_t size);
    static HypothesisClass three_intervals(std::size_t size);

    ClassKind kind() const noexcept { return kind_; }
    std::size_t domain_size() const noexcept { return size_; }

    /// Explicit members; empty for the implicit kinds.
    const std::vector<Hypothesis>& members() const noexcept { return members_; }

    /// Maximum number of flipped intervals (2 or 3) for the interval kinds, 0 otherwise.
    std::size_t interval_budget() const noexcept;

    bool contains(const Hypothesis& h) const;
    bool enumerable() const noexcept;

    /// Number of members. Throws NotEnumerable when enumerable() is false.
    std::uint64_t count() const;

    /// Visit every member exactly once in enumeration order. The reference
    /// passed to `visit` is only valid for the duration of the call.
    void for_each(const std::function<void(std::uint64_t, const Hypothesis&)>& visit) const;

    std::vector<Hypothesis> enumerate() const;

private:
    HypothesisClass(ClassKind kind, std::size_t size, std::vector<Hypothesis> members);

    ClassKind kind_;
    std::size_t size_;
    std::vector<Hypothesis> members_;
};

/// Everything a benchmark run needs: underlying D, initial D0, truth f,
/// class H and the randomly labeled subset (empty when realizable).
class Instance {
public:
    /// Requires supp(D0) within supp(D), f in H, and Pr_D(noisy) < 1.
    Instance(DiscreteDistribution underlying, DiscreteDistribution initial, Hypothesis truth,
             HypothesisClass hypotheses, PointSet noisy = {});

    std::size_t size() const noexcept { return underlying_.size(); }
    FiniteDomain domain() const { return underlying_.domain(); }

    const DiscreteDistribution& underlying() const noexcept { return underlying_; }
    const DiscreteDistribution& initial() const noexcept { return initial_; }
    const Hypothesis& truth() const noexcept { return truth_; }
    const HypothesisClass& hypotheses() const noexcept { return class_; }
    const PointSet& noisy_set() const noexcept { return noisy_; }

    bool realizable() const noexcept { return noisy_.empty(); }
    bool is_noisy(Point x) const { return noisy_mask_[x] != 0; }

    /// delta = Pr_D(x in the noisy set).
    double noise_mass() const;

    /// Same instance with a different initial distribution.
    Instance with_initial(DiscreteDistribution initial) const;

private:
    DiscreteDistribution underlying_;
    DiscreteDistribution initial_;
    Hypothesis truth_;
    HypothesisClass class_;
    PointSet noisy_;
    std::vector<std::uint8_t> noisy_mask_;
};

DiscreteDistribution uniform(FiniteDomain domain);

/// Weighted mixture sum_i w_i P_i, renormalized.
DiscreteDistribution mix(std::span<const DiscreteDistribution> components,
                         std::span<const double> weights);

/// P restricted to `event` and renormalized. Throws ZeroMassEvent if Pr_P(event) = 0.
DiscreteDistribution condition(const DiscreteDistribution& p, const PointSet& event);

double prob_of(const DiscreteDistribution& p, const PointSet& event);

/// Sorted-set helpers.
PointSet set_intersection(const PointSet& a, const PointSet& b);
PointSet set_union(const PointSet& a, const PointSet& b);
bool is_subset(const PointSet& inner, const PointSet& outer);

/// Validate a weight vector: non-negative entries summing to 1 within tolerance.
void validate_weights(std::span<const double> weights, double tolerance = DiscreteDistribution::kTolerance);

}  // namespace dynbench
