#pragma once

#include <stdexcept>
#include <string>

namespace rpr {

/// Bad user-supplied data (negative joint lengths, malformed problem files).
/// The CLI maps this to exit code 2.
class InvalidInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Root extraction was asked to solve the identically-zero polynomial.
/// Upstream this means the forward kinematics degenerates over the whole
/// joint space.
class ZeroPolynomialError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The determinant numerator vanishes identically: the geometry belongs to
/// the degenerate manipulator family and must be solved by the cubic path.
class DegenerateFamilyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Family-only operation invoked on a geometry outside the family.
class NotInFamilyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A degenerate orientation turned out to be infeasible at the given joint
/// lengths (no real platform position).
class InconsistentDegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A structural identity failed at runtime (implementation bug, never a
/// data condition). The CLI maps this to exit code 3.
class InternalAssertionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace rpr
