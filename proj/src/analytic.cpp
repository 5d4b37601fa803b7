#include "rpr/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "rpr/degeneracy.hpp"
#include "rpr/errors.hpp"
#include "rpr/linear_system.hpp"

namespace rpr {

namespace {

// The cleared consistency numerator B(t) equals -4x the family cubic; its
// t^4 coefficient vanishes identically inside the family.
constexpr double kCubicCrossCheckFactor = -4.0;

void append_validated(std::vector<FkSolution>& out, const Geometry& g, const JointVector& j,
                      const HalfAngle& t, int multiplicity) {
    for (const Vec2& p : solutions_at_orientation(g, j, t)) {
        Pose pose{p.x, p.y, normalize_angle(t.to_angle())};
        out.push_back({pose, SolutionKind::DegenerateRoot, multiplicity,
                       max_abs_residual(g, pose, j)});
    }
}

}  // namespace

FamilyClass classify_family(const Geometry& g, double tol) {
    validate_geometry(g);
    const double sb = std::sin(g.beta);
    const double cb = std::cos(g.beta);
    const double s0 = std::max(g.l2, g.c2);
    const double s1 = g.l3 + std::fabs(g.d3);
    const double s2 = g.l3 + std::fabs(g.c3);

    FamilyClass out;
    out.residuals = {std::fabs(g.l2 - g.c2) / s0, std::fabs(g.l3 * sb + g.d3) / s1,
                     std::fabs(g.l3 * cb - g.c3) / s2};
    const bool sides = out.residuals[0] <= tol;
    const bool cosine = out.residuals[2] <= tol;
    if (sides && out.residuals[1] <= tol && cosine) {
        out.kind = FamilyKind::DegenerateFamily;
    } else if (sides && std::fabs(g.l3 * sb - g.d3) / s1 <= tol && cosine) {
        out.kind = FamilyKind::MirrorSimilarCongruent;
    } else {
        out.kind = FamilyKind::General;
    }
    return out;
}

RealPolynomial cubic_characteristic(const Geometry& g, const JointVector& j) {
    if (classify_family(g).kind != FamilyKind::DegenerateFamily) {
        throw NotInFamilyError("cubic characteristic is defined only for the degenerate family");
    }
    const double r1 = j.rho1 * j.rho1;
    const double r2 = j.rho2 * j.rho2;
    const double r3 = j.rho3 * j.rho3;
    const double c2 = g.c2, c3 = g.c3, d3 = g.d3;

    const RealPolynomial cubic{
        d3 * (r2 - r1),
        c3 * (r1 - r2) + r3 * c2 - 4.0 * d3 * d3 * c2 - r1 * c2,
        d3 * (8.0 * c3 * c2 - 4.0 * c2 * c2 + r2 - r1),
        c3 * (r1 - r2 + 4.0 * c2 * c2 - 4.0 * c3 * c2) + c2 * (r3 - r1),
    };

    // cross-validate against the independently derived consistency numerator
    const RealPolynomial b = condition_quartic(g, j);
    const double scale = std::max(b.max_abs_coeff(), 1e-300);
    if (std::fabs(b.coeff(4)) > 1e-9 * scale) {
        throw InternalAssertionError("family consistency numerator kept a t^4 term");
    }
    for (std::size_t k = 0; k < 4; ++k) {
        const double derived = b.coeff(k) / kCubicCrossCheckFactor;
        if (std::fabs(derived - cubic.coeff(k)) > 1e-9 * (scale + std::fabs(cubic.coeff(k)))) {
            throw InternalAssertionError("family cubic disagrees with the derived numerator");
        }
    }
    return cubic;
}

std::vector<FkSolution> forward_kinematics_family(const Geometry& g, const JointVector& j) {
    validate_joints(j);
    const RealPolynomial cubic = cubic_characteristic(g, j);

    std::vector<FkSolution> out;
    // a zero cubic (possible only for flat congruent triangles with matched
    // joints) means the kinematics degenerates over the whole joint space;
    // real_roots signals that upstream
    for (const RootRecord& r : real_roots(cubic).roots) {
        append_validated(out, g, j, {r.value, false}, r.multiplicity);
    }
    // tan-half blind spot: the cubic cannot represent phi = pi
    append_validated(out, g, j, HalfAngle::infinite(), 1);

    std::sort(out.begin(), out.end(), [](const FkSolution& a, const FkSolution& b) {
        if (a.pose.phi != b.pose.phi) return a.pose.phi < b.pose.phi;
        return a.pose.x < b.pose.x;
    });
    return out;
}

}  // namespace rpr
