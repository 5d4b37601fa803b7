#pragma once

#include <vector>

#include "rpr/linear_system.hpp"
#include "rpr/model.hpp"
#include "rpr/polynomial.hpp"

namespace rpr {

/// Orientations at which the position linear system is singular, i.e. the
/// real roots of the determinant quadratic in t = tan(phi/2). The infinite
/// orientation (phi = pi) appears when the leading coefficient vanishes;
/// all_orientations is set when the quadratic vanishes identically (the
/// degenerate manipulator family).
struct DegenerateOrientations {
    RealPolynomial quadratic;  // ascending (a0, a1, a2)
    std::vector<HalfAngle> orientations;
    bool all_orientations = false;
};

/// A degeneracy condition as an affine form in the squared joint lengths:
/// value = k0 + k1*rho1^2 + k2*rho2^2 + k3*rho3^2 (quadratic in the joint
/// lengths themselves).
struct JointSquareForm {
    double k0 = 0.0, k1 = 0.0, k2 = 0.0, k3 = 0.0;

    double value(const JointVector& j) const {
        return k0 + k1 * j.rho1 * j.rho1 + k2 * j.rho2 * j.rho2 + k3 * j.rho3 * j.rho3;
    }
};

/// A degenerate orientation whose consistency condition is satisfied by the
/// current joint input.
struct ActiveDegeneracy {
    HalfAngle orientation;
    double condition_value = 0.0;  // consistency numerator at the orientation
};

/// Solves the determinant quadratic for the given geometry.
DegenerateOrientations degenerate_orientations(const Geometry& g);

/// Cleared numerator of S W - V Q as a polynomial in t (degree <= 4),
/// computed by polynomial convolution of the cleared linear coefficients.
/// Vanishes at a degenerate orientation exactly when the singular system is
/// still consistent there.
RealPolynomial condition_quartic(const Geometry& g, const JointVector& j);

/// The consistency condition at a fixed orientation, expressed as an affine
/// form in (rho1^2, rho2^2, rho3^2).
JointSquareForm degeneracy_condition(const Geometry& g, const HalfAngle& t);

/// Degenerate orientations of g whose consistency condition is satisfied by
/// j within tol (relative to the condition's magnitude scale). Returns an
/// empty list for family geometries, which are routed to the cubic solver.
std::vector<ActiveDegeneracy> check_degenerate_input(const Geometry& g, const JointVector& j,
                                                     double tol = 1e-8);

/// Position recovery at a degenerate orientation via the case ladder on the
/// two singular rows. Returns one or two validated positions. Throws
/// InconsistentDegeneracyError when no real position exists at these joint
/// lengths.
std::vector<Vec2> recover_degenerate_positions(const Geometry& g, const JointVector& j,
                                               const HalfAngle& t);

/// All validated platform positions at a fixed orientation: the unique
/// linear-system solution when the system is regular, the degenerate ladder
/// otherwise. Infeasible orientations yield an empty list.
std::vector<Vec2> solutions_at_orientation(const Geometry& g, const JointVector& j,
                                           const HalfAngle& t, double residual_tol = 1e-8);

}  // namespace rpr
