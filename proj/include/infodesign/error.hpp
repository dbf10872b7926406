#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "infodesign/scalar.hpp"

namespace infodesign {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A value violates a documented precondition (not a probability vector, etc.).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ZeroSumViolation : public Error {
public:
    using Error::Error;
};

/// Raised by boundary_adjust when no payoff-equivalent reallocation stays in the prior set.
class AssumptionViolation : public Error {
public:
    using Error::Error;
};

/// No supporting prior exists. `farkas` proves infeasibility of the supporting-prior system.
class NotImplementable : public Error {
public:
    NotImplementable(const std::string& what, std::vector<Scalar> farkas)
        : Error(what), farkas_(std::move(farkas)) {}
    const std::vector<Scalar>& farkas() const noexcept { return farkas_; }

private:
    std::vector<Scalar> farkas_;
};

class NotImplementing : public Error {
public:
    using Error::Error;
};

class NoImplementableAction : public Error {
public:
    using Error::Error;
};

class InteriorSupportViolation : public Error {
public:
    using Error::Error;
};

class AssignmentMismatch : public Error {
public:
    using Error::Error;
};

class NoIrrelevantCovariate : public Error {
public:
    using Error::Error;
};

class EmptyOrFullVariableSet : public Error {
public:
    using Error::Error;
};

}  // namespace infodesign
