#pragma once

#include "rpr/model.hpp"
#include "rpr/polynomial.hpp"

namespace rpr {

/// Coefficients of the two linear position equations at a fixed orientation:
///   R x + S y + Q = 0
///   U x + V y + W = 0
/// obtained by subtracting the first leg constraint from the other two.
struct LinearCoeffs {
    double R = 0.0, S = 0.0, Q = 0.0;
    double U = 0.0, V = 0.0, W = 0.0;

    double det() const { return R * V - S * U; }
};

/// The same six coefficients as polynomials in t = tan(phi/2), multiplied
/// through by (1 + t^2). Each has degree <= 2 and satisfies
/// Rt(t)/(1+t^2) == R(2*atan(t)) pointwise, and likewise for the others.
struct LinearCoeffsT {
    RealPolynomial R, S, Q, U, V, W;
};

/// Determinant and consistency numerators:
///   A = R V - S U  (system determinant),
///   B = S W - V Q,  C = R W - U Q  (Cramer consistency numerators).
/// In the t-forms the structural factor (1+t^2) of A's cleared numerator is
/// already divided out, so A has degree <= 2 and B, C degree <= 4.
struct DegeneracyTripleT {
    RealPolynomial A, B, C;
};

LinearCoeffs linear_coeffs(const Geometry& g, const JointVector& j, double phi);

LinearCoeffsT linear_coeffs_t(const Geometry& g, const JointVector& j);

DegeneracyTripleT degeneracy_triple_t(const Geometry& g, const JointVector& j);

/// Magnitude scale of A's coefficients, used for the "A vanishes
/// identically" decision. Built from the absolute values of the terms that
/// compose the coefficients, so it never collapses by cancellation.
double determinant_coeff_scale(const Geometry& g);

}  // namespace rpr
