#include "rpr/degeneracy.hpp"

#include <algorithm>
#include <cmath>

#include "rpr/errors.hpp"

namespace rpr {

namespace {

constexpr double kAllOrientationsTol = 1e-12;

// Relative scale of the condition quartic near t, bounding |B(t)| against
// coefficient magnitude so activity tests stay unit-independent.
double condition_scale(const RealPolynomial& b, double t) {
    const double m = std::max(b.max_abs_coeff(), 1e-300);
    const double a = std::max(1.0, std::fabs(t));
    return m * a * a * a * a;
}

double condition_scale_infinite(const RealPolynomial& b) {
    return std::max(b.max_abs_coeff(), 1e-300);
}

// Evaluates the consistency numerator at a (possibly infinite) orientation.
// For finite t this is B(t); at phi = pi it is the t^4 coefficient, the
// limit of B(t)/(1+t^2)^2.
double condition_value(const RealPolynomial& b, const HalfAngle& t) {
    return t.at_infinity ? b.coeff(4) : b.evaluate(t.value);
}

}  // namespace

DegenerateOrientations degenerate_orientations(const Geometry& g) {
    validate_geometry(g);
    const double sb = std::sin(g.beta);
    const double cb = std::cos(g.beta);
    const double a2 = (g.l2 + g.c2) * (g.d3 + g.l3 * sb);
    const double a1 = 2.0 * (g.l2 * g.c3 - g.c2 * g.l3 * cb);
    const double a0 = (g.l2 - g.c2) * (g.l3 * sb - g.d3);

    DegenerateOrientations out;
    out.quadratic = RealPolynomial{a0, a1, a2};

    const double scale = determinant_coeff_scale(g) / 4.0;
    const bool z2 = std::fabs(a2) <= kAllOrientationsTol * scale;
    const bool z1 = std::fabs(a1) <= kAllOrientationsTol * scale;
    const bool z0 = std::fabs(a0) <= kAllOrientationsTol * scale;
    if (z2 && z1 && z0) {
        out.all_orientations = true;
        return out;
    }
    if (z2) {
        // leading coefficient vanishes: phi = pi satisfies the determinant
        // condition, plus at most one finite root
        if (!z1) {
            out.orientations.push_back({-a0 / a1, false});
        }
        out.orientations.push_back(HalfAngle::infinite());
        return out;
    }
    const double disc = a1 * a1 - 4.0 * a2 * a0;
    const double disc_scale = a1 * a1 + 4.0 * std::fabs(a2 * a0);
    if (disc > 1e-12 * disc_scale) {
        const double s = std::sqrt(disc);
        const double q = -0.5 * (a1 + (a1 >= 0.0 ? s : -s));
        double t1 = q / a2;
        double t2 = (q != 0.0) ? a0 / q : -a1 / (2.0 * a2);
        if (t1 > t2) {
            std::swap(t1, t2);
        }
        out.orientations.push_back({t1, false});
        out.orientations.push_back({t2, false});
    } else if (disc >= -1e-12 * disc_scale) {
        out.orientations.push_back({-a1 / (2.0 * a2), false});
    }
    return out;
}

RealPolynomial condition_quartic(const Geometry& g, const JointVector& j) {
    const LinearCoeffsT t = linear_coeffs_t(g, j);
    return t.S * t.W - t.V * t.Q;
}

JointSquareForm degeneracy_condition(const Geometry& g, const HalfAngle& t) {
    // B(t) = S(t)*Wgeo(t) - V(t)*Qgeo(t) + (1+t^2) * [S(t)*(r1^2 - r3^2)
    //        - V(t)*(r1^2 - r2^2)], so the form follows from one evaluation
    // of the joint-free parts.
    const JointVector zero{};
    const RealPolynomial b0 = condition_quartic(g, zero);
    const LinearCoeffsT lt = linear_coeffs_t(g, zero);

    JointSquareForm f;
    if (t.at_infinity) {
        f.k0 = b0.coeff(4);
        const double s_lead = lt.S.coeff(2);  // always zero: S has no t^2 term
        const double v_lead = lt.V.coeff(2);
        f.k1 = s_lead - v_lead;
        f.k2 = v_lead;
        f.k3 = -s_lead;
        return f;
    }
    const double tv = t.value;
    const double circle = 1.0 + tv * tv;
    const double s = lt.S.evaluate(tv);
    const double v = lt.V.evaluate(tv);
    f.k0 = b0.evaluate(tv);
    f.k1 = circle * (s - v);
    f.k2 = circle * v;
    f.k3 = -circle * s;
    return f;
}

std::vector<ActiveDegeneracy> check_degenerate_input(const Geometry& g, const JointVector& j,
                                                     double tol) {
    validate_joints(j);
    const DegenerateOrientations orient = degenerate_orientations(g);
    std::vector<ActiveDegeneracy> active;
    if (orient.all_orientations) {
        return active;  // family geometry: routed to the cubic solver
    }
    const RealPolynomial b = condition_quartic(g, j);
    for (const HalfAngle& t : orient.orientations) {
        const double value = condition_value(b, t);
        const double scale =
            t.at_infinity ? condition_scale_infinite(b) : condition_scale(b, t.value);
        if (std::fabs(value) <= tol * scale) {
            active.push_back({t, value});
        }
    }
    return active;
}

std::vector<Vec2> recover_degenerate_positions(const Geometry& g, const JointVector& j,
                                               const HalfAngle& t) {
    const double phi = t.to_angle();
    const LinearCoeffs c = linear_coeffs(g, j, phi);
    const double r1sq = j.rho1 * j.rho1;

    const double tol_r = 1e-9 * (g.l2 + g.c2);
    const double tol_s = 1e-9 * 2.0 * g.l2;
    const double tol_u = 1e-9 * 2.0 * (g.l3 + std::fabs(g.c3));
    const double tol_v = 1e-9 * 2.0 * (g.l3 + std::fabs(g.d3));

    std::vector<Vec2> pts;
    auto solve_row_quadratic = [&](double row_x, double row_y, double row_c) {
        // x = -(row_y * y + row_c)/row_x substituted into x^2 + y^2 = rho1^2
        const double a = row_y * row_y + row_x * row_x;
        const double b = 2.0 * row_y * row_c;
        const double cc = row_c * row_c - row_x * row_x * r1sq;
        const double disc = b * b - 4.0 * a * cc;
        const double disc_scale = b * b + std::fabs(4.0 * a * cc) + 1e-300;
        if (disc < -1e-10 * disc_scale) {
            throw InconsistentDegeneracyError(
                "degenerate orientation infeasible at these joint lengths");
        }
        const double s = std::sqrt(std::max(disc, 0.0));
        const double qq = -0.5 * (b + (b >= 0.0 ? s : -s));
        double y1 = qq / a;
        double y2 = (qq != 0.0) ? cc / qq : y1;
        for (double y : {y1, y2}) {
            pts.push_back({-(row_y * y + row_c) / row_x, y});
            if (disc <= 1e-10 * disc_scale) {
                break;  // tangency: one position
            }
        }
    };

    if (std::fabs(c.R) > tol_r) {
        solve_row_quadratic(c.R, c.S, c.Q);
    } else if (std::fabs(c.U) > tol_u) {
        solve_row_quadratic(c.U, c.V, c.W);
    } else if (std::fabs(c.S) > tol_s || std::fabs(c.V) > tol_v) {
        const double y = std::fabs(c.S) > tol_s ? -c.Q / c.S : -c.W / c.V;
        const double xsq = r1sq - y * y;
        const double xsq_scale = r1sq + y * y + 1e-300;
        if (xsq < -1e-10 * xsq_scale) {
            throw InconsistentDegeneracyError(
                "degenerate orientation infeasible at these joint lengths");
        }
        const double x = std::sqrt(std::max(xsq, 0.0));
        pts.push_back({x, y});
        if (x > 1e-10 * std::sqrt(xsq_scale)) {
            pts.push_back({-x, y});
        }
    } else {
        // every row coefficient vanishes: consistent only when Q = W = 0,
        // which forces all joint lengths (and the position) to zero
        const double qw_scale = g.l2 * g.l2 + g.c2 * g.c2 + g.l3 * g.l3 + g.c3 * g.c3 +
                                g.d3 * g.d3 + j.rho1 * j.rho1 + j.rho2 * j.rho2 +
                                j.rho3 * j.rho3;
        if (std::fabs(c.Q) > 1e-9 * qw_scale || std::fabs(c.W) > 1e-9 * qw_scale) {
            throw InconsistentDegeneracyError(
                "degenerate orientation infeasible at these joint lengths");
        }
        if (j.max_rho() > 1e-9 * (1.0 + qw_scale)) {
            // self-motion circle: a continuum of positions, no isolated modes
            throw InconsistentDegeneracyError(
                "orientation admits a continuum of positions (self motion)");
        }
        pts.push_back({0.0, 0.0});
    }

    // residual gate: every returned pair must satisfy all three constraints
    std::vector<Vec2> validated;
    const double tol = 1e-8 * j.residual_scale();
    for (const Vec2& p : pts) {
        if (max_abs_residual(g, {p.x, p.y, phi}, j) < tol) {
            validated.push_back(p);
        }
    }
    return validated;
}

std::vector<Vec2> solutions_at_orientation(const Geometry& g, const JointVector& j,
                                           const HalfAngle& t, double residual_tol) {
    const double phi = t.to_angle();
    const LinearCoeffs c = linear_coeffs(g, j, phi);
    const double det = c.det();
    const double det_scale = std::max({std::fabs(c.R * c.V), std::fabs(c.S * c.U),
                                       4.0 * (g.l2 + g.c2) * (g.l3 + std::fabs(g.d3))});
    if (std::fabs(det) > 1e-9 * det_scale) {
        const Vec2 p{(c.S * c.W - c.V * c.Q) / det, (c.U * c.Q - c.R * c.W) / det};
        if (max_abs_residual(g, {p.x, p.y, phi}, j) < residual_tol * j.residual_scale()) {
            return {p};
        }
        return {};
    }
    try {
        return recover_degenerate_positions(g, j, t);
    } catch (const InconsistentDegeneracyError&) {
        return {};
    }
}

}  // namespace rpr
