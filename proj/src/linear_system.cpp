#include "rpr/linear_system.hpp"

#include <cmath>

#include "rpr/errors.hpp"

namespace rpr {

LinearCoeffs linear_coeffs(const Geometry& g, const JointVector& j, double phi) {
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);
    const double cpb = std::cos(phi + g.beta);
    const double spb = std::sin(phi + g.beta);

    LinearCoeffs c;
    c.R = 2.0 * g.l2 * cp - 2.0 * g.c2;
    c.S = 2.0 * g.l2 * sp;
    c.Q = -2.0 * g.c2 * g.l2 * cp + g.l2 * g.l2 + g.c2 * g.c2 - j.rho2 * j.rho2 + j.rho1 * j.rho1;
    c.U = 2.0 * g.l3 * cpb - 2.0 * g.c3;
    c.V = 2.0 * g.l3 * spb - 2.0 * g.d3;
    c.W = -2.0 * g.d3 * g.l3 * spb - 2.0 * g.c3 * g.l3 * cpb + g.l3 * g.l3 + g.c3 * g.c3 +
          g.d3 * g.d3 - j.rho3 * j.rho3 + j.rho1 * j.rho1;
    return c;
}

LinearCoeffsT linear_coeffs_t(const Geometry& g, const JointVector& j) {
    const double sb = std::sin(g.beta);
    const double cb = std::cos(g.beta);
    const double k2 = g.l2 * g.l2 + g.c2 * g.c2 - j.rho2 * j.rho2 + j.rho1 * j.rho1;
    const double k3 = g.l3 * g.l3 + g.c3 * g.c3 + g.d3 * g.d3 - j.rho3 * j.rho3 + j.rho1 * j.rho1;

    LinearCoeffsT t;
    t.R = RealPolynomial{2.0 * (g.l2 - g.c2), 0.0, -2.0 * (g.l2 + g.c2)};
    t.S = RealPolynomial{0.0, 4.0 * g.l2, 0.0};
    t.Q = RealPolynomial{k2 - 2.0 * g.c2 * g.l2, 0.0, k2 + 2.0 * g.c2 * g.l2};
    t.U = RealPolynomial{2.0 * (g.l3 * cb - g.c3), -4.0 * g.l3 * sb, -2.0 * (g.l3 * cb + g.c3)};
    t.V = RealPolynomial{2.0 * (g.l3 * sb - g.d3), 4.0 * g.l3 * cb, -2.0 * (g.l3 * sb + g.d3)};
    t.W = RealPolynomial{k3 - 2.0 * g.l3 * (g.d3 * sb + g.c3 * cb),
                         4.0 * g.l3 * (g.c3 * sb - g.d3 * cb),
                         k3 + 2.0 * g.l3 * (g.d3 * sb + g.c3 * cb)};
    return t;
}

DegeneracyTripleT degeneracy_triple_t(const Geometry& g, const JointVector& j) {
    const LinearCoeffsT t = linear_coeffs_t(g, j);

    // R V - S U carries one exact structural factor (1+t^2): its second
    // harmonics cancel, which is why the determinant condition contains
    // only first harmonics.
    const RealPolynomial a_raw = t.R * t.V - t.S * t.U;
    DivisionResult div = strip_circle_factor(a_raw);
    const double a_scale = std::max(a_raw.max_abs_coeff(), determinant_coeff_scale(g));
    if (div.remainder_norm > 1e-9 * a_scale) {
        throw InternalAssertionError("determinant numerator lost its (1+t^2) factor");
    }

    DegeneracyTripleT out;
    out.A = div.quotient;
    out.B = t.S * t.W - t.V * t.Q;
    out.C = t.R * t.W - t.U * t.Q;
    return out;
}

double determinant_coeff_scale(const Geometry& g) {
    const double sb = std::fabs(std::sin(g.beta));
    const double cb = std::fabs(std::cos(g.beta));
    const double t2 = (g.l2 + g.c2) * (std::fabs(g.d3) + g.l3 * sb);
    const double t1 = 2.0 * (g.l2 * std::fabs(g.c3) + g.c2 * g.l3 * cb);
    const double t0 = (g.l2 + g.c2) * (g.l3 * sb + std::fabs(g.d3));
    return 4.0 * std::max({t2, t1, t0, 1e-300});
}

}  // namespace rpr
