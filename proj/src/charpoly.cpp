#include "rpr/charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rpr/errors.hpp"
#include "rpr/linear_system.hpp"

namespace rpr {

namespace {

constexpr double kResidualTol = 1e-8;
// Routing threshold: a characteristic root counts as degenerate when the
// determinant numerator at the root is below 1e-7 of its coefficient scale.
constexpr double kDegenerateRouteTol = 1e-7;
// Diagnostic band: inputs whose consistency value at a degenerate
// orientation sits this close to zero get a near-degeneracy warning.
constexpr double kNearDegenerateWarn = 1e-4;

double determinant_scale_at(const RealPolynomial& a, double t) {
    const double m = std::max(a.max_abs_coeff(), 1e-300);
    const double s = std::max(1.0, std::fabs(t));
    return m * s * s;
}

bool same_pose(const Pose& a, const Pose& b, double pos_tol, double ang_tol) {
    return angle_distance(a.phi, b.phi) <= ang_tol && std::fabs(a.x - b.x) <= pos_tol &&
           std::fabs(a.y - b.y) <= pos_tol;
}

void merge_solution(std::vector<FkSolution>& out, const FkSolution& s, double pos_tol) {
    for (FkSolution& existing : out) {
        if (same_pose(existing.pose, s.pose, pos_tol, 1e-7)) {
            if (s.max_residual < existing.max_residual) {
                existing.pose = s.pose;
                existing.max_residual = s.max_residual;
            }
            existing.multiplicity = std::max(existing.multiplicity, s.multiplicity);
            return;
        }
    }
    out.push_back(s);
}

}  // namespace

RealPolynomial characteristic_polynomial(const Geometry& g, const JointVector& j) {
    validate_geometry(g);
    const DegeneracyTripleT tri = degeneracy_triple_t(g, j);
    if (tri.A.max_abs_coeff() <= 1e-12 * determinant_coeff_scale(g)) {
        throw DegenerateFamilyError(
            "determinant numerator vanishes identically; solve through the family cubic");
    }

    const RealPolynomial circle{1.0, 0.0, 1.0};
    const RealPolynomial rho1sq{j.rho1 * j.rho1};
    const RealPolynomial raw =
        tri.B * tri.B + tri.C * tri.C - rho1sq * tri.A * tri.A * circle * circle;

    const DivisionResult div = strip_circle_factor(raw);
    if (div.remainder_norm > 1e-9 * std::max(raw.max_abs_coeff(), 1e-300)) {
        throw InternalAssertionError("characteristic polynomial lost its (1+t^2) factor");
    }
    return div.quotient;
}

FkOutcome solve_forward(const Geometry& g, const JointVector& j, double condition_tol) {
    validate_geometry(g);
    validate_joints(j);

    FkOutcome out;
    out.family = classify_family(g);

    // near-family diagnostic: the general path stays numerically valid but
    // approaches rank deficiency
    if (out.family.kind == FamilyKind::General) {
        const double worst =
            std::max({out.family.residuals[0], out.family.residuals[1], out.family.residuals[2]});
        if (worst <= kNearDegenerateWarn) {
            std::ostringstream msg;
            msg << "geometry is within " << worst
                << " of the degenerate family; characteristic polynomial is nearly rank-deficient";
            out.warnings.push_back(msg.str());
        }
    }

    if (out.family.kind == FamilyKind::DegenerateFamily) {
        out.charpoly = cubic_characteristic(g, j);
        out.solutions = forward_kinematics_family(g, j);
        return out;
    }

    out.active_degeneracies = check_degenerate_input(g, j, condition_tol);
    for (const ActiveDegeneracy& a : check_degenerate_input(g, j, kNearDegenerateWarn)) {
        const bool active = std::any_of(
            out.active_degeneracies.begin(), out.active_degeneracies.end(),
            [&](const ActiveDegeneracy& b) {
                return b.orientation.at_infinity == a.orientation.at_infinity &&
                       (a.orientation.at_infinity || b.orientation.value == a.orientation.value);
            });
        if (!active && a.condition_value != 0.0) {
            std::ostringstream msg;
            msg << "joint input is near the degeneracy condition at t = "
                << (a.orientation.at_infinity ? std::string("infinity")
                                              : std::to_string(a.orientation.value))
                << " (condition value " << a.condition_value
                << "); nearby roots may be ill-conditioned";
            out.warnings.push_back(msg.str());
        }
    }

    const double pos_tol = 1e-7 * (1.0 + j.max_rho());
    std::vector<FkSolution> found;

    const DegeneracyTripleT tri = degeneracy_triple_t(g, j);
    bool identically_singular = false;
    try {
        out.charpoly = characteristic_polynomial(g, j);
    } catch (const DegenerateFamilyError&) {
        // singular at every orientation without the family geometry: only
        // flat/aligned triangle geometries reach this. Solve the consistency
        // roots directly through the case ladder.
        identically_singular = true;
        out.warnings.push_back(
            "linear system is singular at every orientation outside the degenerate family; "
            "solving consistency roots directly");
    }

    if (identically_singular) {
        if (!tri.B.is_zero()) {
            const double c_scale = std::max(tri.C.max_abs_coeff(), 1e-300);
            for (const RootRecord& r : real_roots(tri.B).roots) {
                if (std::fabs(tri.C.evaluate(r.value)) > 1e-6 * c_scale) {
                    continue;  // consistency requires both numerators to vanish
                }
                for (const Vec2& p : solutions_at_orientation(g, j, {r.value, false})) {
                    Pose pose{p.x, p.y, normalize_angle(2.0 * std::atan(r.value))};
                    merge_solution(found,
                                   {pose, SolutionKind::DegenerateRoot, r.multiplicity,
                                    max_abs_residual(g, pose, j)},
                                   pos_tol);
                }
            }
        }
    } else if (!out.charpoly.is_zero()) {
        const DegenerateOrientations orient = degenerate_orientations(g);

        auto try_generic = [&](double t, int multiplicity) -> bool {
            const double phi = normalize_angle(2.0 * std::atan(t));
            const LinearCoeffs c = linear_coeffs(g, j, phi);
            const double det = c.det();
            if (det == 0.0) {
                return false;
            }
            const Pose pose{(c.S * c.W - c.V * c.Q) / det, (c.U * c.Q - c.R * c.W) / det, phi};
            const double res = max_abs_residual(g, pose, j);
            if (res < kResidualTol * j.residual_scale()) {
                merge_solution(found, {pose, SolutionKind::GenericRoot, multiplicity, res},
                               pos_tol);
                return true;
            }
            return false;
        };
        auto try_degenerate = [&](double t, int multiplicity) -> bool {
            const double phi = normalize_angle(2.0 * std::atan(t));
            bool any = false;
            try {
                for (const Vec2& p : recover_degenerate_positions(g, j, {t, false})) {
                    Pose pose{p.x, p.y, phi};
                    merge_solution(found,
                                   {pose, SolutionKind::DegenerateRoot, multiplicity,
                                    max_abs_residual(g, pose, j)},
                                   pos_tol);
                    any = true;
                }
            } catch (const InconsistentDegeneracyError&) {
                // no real position at this orientation for these joints
            }
            return any;
        };
        auto snap_orientation = [&](double t) -> double {
            for (const HalfAngle& cand : orient.orientations) {
                if (!cand.at_infinity &&
                    std::fabs(cand.value - t) <= 1e-3 * std::max(1.0, std::fabs(cand.value))) {
                    return cand.value;
                }
            }
            return t;
        };

        // tight clustering: genuinely distinct near-degenerate root pairs
        // (split by ~1e-6) must stay separate; exact double roots still
        // cluster because both eigenvalue copies polish to the same point.
        // Misrouted roots are retried on the other recovery path; the
        // residual gate keeps false solutions out either way.
        for (const RootRecord& r : real_roots(out.charpoly, 1e-9).roots) {
            // a root whose orientation carries a satisfied degeneracy
            // condition IS that orientation's double root; snap to it so the
            // recovery rows are evaluated exactly where they are consistent.
            // The snap radius absorbs the sqrt(eps) stagnation of multiple
            // roots under plain polishing.
            const ActiveDegeneracy* active = nullptr;
            for (const ActiveDegeneracy& a : out.active_degeneracies) {
                if (!a.orientation.at_infinity &&
                    std::fabs(a.orientation.value - r.value) <=
                        1e-4 * std::max(1.0, std::fabs(a.orientation.value))) {
                    active = &a;
                    break;
                }
            }
            if (active != nullptr) {
                if (!try_degenerate(active->orientation.value, std::max(r.multiplicity, 2))) {
                    try_generic(r.value, r.multiplicity);
                }
            } else if (std::fabs(tri.A.evaluate(r.value)) <=
                       kDegenerateRouteTol * determinant_scale_at(tri.A, r.value)) {
                if (!try_degenerate(snap_orientation(r.value), r.multiplicity)) {
                    try_generic(r.value, r.multiplicity);
                }
            } else {
                if (!try_generic(r.value, r.multiplicity)) {
                    try_degenerate(snap_orientation(r.value), r.multiplicity);
                }
            }
        }
    }

    // tan-half blind spot: test phi = pi directly
    {
        const HalfAngle inf = HalfAngle::infinite();
        const LinearCoeffs c = linear_coeffs(g, j, kPi);
        const double det_scale = std::max({std::fabs(c.R * c.V), std::fabs(c.S * c.U),
                                           4.0 * (g.l2 + g.c2) * (g.l3 + std::fabs(g.d3))});
        const bool singular = std::fabs(c.det()) <= 1e-9 * det_scale;
        for (const Vec2& p : solutions_at_orientation(g, j, inf)) {
            Pose pose{p.x, p.y, kPi};
            merge_solution(found,
                           {pose, singular ? SolutionKind::DegenerateRoot : SolutionKind::GenericRoot,
                            1, max_abs_residual(g, pose, j)},
                           pos_tol);
        }
    }

    std::sort(found.begin(), found.end(), [](const FkSolution& a, const FkSolution& b) {
        if (a.pose.phi != b.pose.phi) return a.pose.phi < b.pose.phi;
        return a.pose.x < b.pose.x;
    });
    out.solutions = std::move(found);
    return out;
}

std::vector<FkSolution> forward_kinematics(const Geometry& g, const JointVector& j) {
    return solve_forward(g, j).solutions;
}

}  // namespace rpr
