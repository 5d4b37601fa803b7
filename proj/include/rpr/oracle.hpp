#pragma once

#include <vector>

#include "rpr/model.hpp"
#include "rpr/solution.hpp"

namespace rpr {

struct SweepConfig {
    int samples = 7200;        // orientation samples over (-pi, pi]
    double refine_tol = 1e-12; // scalar-residual target of the bisection
    double accept_tol = 1e-9;  // final residual gate (times 1 + rho_max^2)
};

/// Intersection points of two circles. Tangency (discriminant within
/// tolerance of zero) yields one point; disjoint, contained, or coincident
/// circles yield none.
std::vector<Vec2> circle_intersection(const Vec2& center1, double r1, const Vec2& center2,
                                      double r2);

/// Brute-force forward kinematics working only from the three leg
/// constraints: sweeps the platform orientation, intersects two leg circles
/// per sample, and brackets sign changes of the remaining leg's residual.
/// Runs two passes with different leg pairings so that configurations where
/// one circle pair coincides (the parallelogram situation) are still
/// resolved. Exists to validate the analytic paths, not to compete.
std::vector<FkSolution> sweep_fk(const Geometry& g, const JointVector& j,
                                 const SweepConfig& cfg = {});

}  // namespace rpr
