#pragma once

#include <string>
#include <vector>

#include "rpr/analytic.hpp"
#include "rpr/degeneracy.hpp"
#include "rpr/model.hpp"
#include "rpr/polynomial.hpp"
#include "rpr/solution.hpp"

namespace rpr {

/// The degree-<=6 characteristic polynomial in t = tan(phi/2), built from
/// the squared-consistency identity rho1^2 A^2 = B^2 + C^2 on the cleared
/// numerators and divided by the structural (1+t^2) factor (remainder
/// asserted below 1e-9 of the coefficient scale).
/// Throws DegenerateFamilyError when A vanishes identically (the caller
/// must route to the cubic solver).
RealPolynomial characteristic_polynomial(const Geometry& g, const JointVector& j);

/// Full forward-kinematics result with routing context for reporting.
struct FkOutcome {
    std::vector<FkSolution> solutions;
    FamilyClass family;
    RealPolynomial charpoly;  // sextic, or the family cubic when routed
    std::vector<ActiveDegeneracy> active_degeneracies;
    std::vector<std::string> warnings;
};

/// Complete routed pipeline: family geometries go to the cubic solver;
/// otherwise the sextic is solved, regular roots recovered through the 2x2
/// solve, singular roots through the case ladder, and phi = pi tested
/// directly. Every returned solution passes the constraint-residual gate
/// max |rho_i^2 - dist_i^2| < 1e-8 (1 + rho_max^2).
/// condition_tol controls which degeneracy conditions count as active
/// (misclassification self-corrects through residual-gated fallbacks).
FkOutcome solve_forward(const Geometry& g, const JointVector& j, double condition_tol = 1e-8);

/// Spec'd convenience form of solve_forward.
std::vector<FkSolution> forward_kinematics(const Geometry& g, const JointVector& j);

}  // namespace rpr
