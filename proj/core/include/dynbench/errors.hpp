#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dynbench {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: shape mismatch, bad weights, broken invariant on construction.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Conditioning on an event the distribution gives zero probability.
class ZeroMassEvent : public Error {
public:
    using Error::Error;
};

/// The hypothesis class is too large (or of the wrong kind) to enumerate.
class NotEnumerable : public Error {
public:
    using Error::Error;
};

/// 1/eps is not a natural number, or eps is outside the builder's range.
class InvalidEpsilon : public Error {
public:
    using Error::Error;
};

/// A scripted hypothesis cannot be expressed in the requested class.
class MembershipViolation : public Error {
public:
    using Error::Error;
};

/// Correlation requested on a sample with zero variance.
class DegenerateVariance : public Error {
public:
    using Error::Error;
};

/// An oracle broke its contract. The CLI maps these to exit code 4.
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// A scripted minimizer was asked to return a hypothesis that is not eps-feasible.
class InfeasibleScript : public ContractViolation {
public:
    InfeasibleScript(std::size_t round, double achieved, double minimum, double epsilon);

    std::size_t round() const noexcept { return round_; }
    double achieved() const noexcept { return achieved_; }
    double minimum() const noexcept { return minimum_; }

private:
    std::size_t round_;
    double achieved_;
    double minimum_;
};

/// A minimizer mode produced an output outside its eps contract.
class OracleContractViolation : public ContractViolation {
public:
    using ContractViolation::ContractViolation;
};

/// Hinge descent certificate below 1 - 2 eps.
class DescentViolation : public ContractViolation {
public:
    using ContractViolation::ContractViolation;
};

/// Weak learner returned weighted risk >= 1/2, so the boosting step size is not positive.
class StalledWeakLearner : public ContractViolation {
public:
    using ContractViolation::ContractViolation;
};

}  // namespace dynbench
