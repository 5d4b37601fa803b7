#pragma once

#include <array>
#include <vector>

#include "rpr/model.hpp"
#include "rpr/polynomial.hpp"
#include "rpr/solution.hpp"

namespace rpr {

enum class FamilyKind {
    General,
    /// Congruent base and platform triangles, platform rotated 180 deg about
    /// the side l2: l2 = c2, sin(beta) = -d3/l3, cos(beta) = c3/l3. The
    /// position linear system is singular at every input and the forward
    /// kinematics reduces to a cubic.
    DegenerateFamily,
    /// The mirror variant sin(beta) = +d3/l3: congruent triangles with a
    /// passive translational motion at phi = 0 (previously known family,
    /// solved by the general path).
    MirrorSimilarCongruent,
};

struct FamilyClass {
    FamilyKind kind = FamilyKind::General;
    /// Scaled residuals of the three family conditions
    /// (|l2 - c2|, |l3 sin(beta) + d3|, |l3 cos(beta) - c3|).
    std::array<double, 3> residuals{};
};

FamilyClass classify_family(const Geometry& g, double tol = 1e-9);

/// The degree-3 characteristic polynomial of a degenerate-family
/// manipulator, coefficients ascending in t = tan(phi/2). Cross-validated at
/// runtime against the independently derived consistency numerator.
/// Throws NotInFamilyError outside the family.
RealPolynomial cubic_characteristic(const Geometry& g, const JointVector& j);

/// Forward kinematics for the degenerate family: cubic orientations, then
/// singular-system position recovery; phi = pi tested directly. At most 3
/// distinct orientations, at most 6 validated solutions.
std::vector<FkSolution> forward_kinematics_family(const Geometry& g, const JointVector& j);

}  // namespace rpr
