#include "rpr/model.hpp"

#include <cmath>

#include "rpr/errors.hpp"

namespace rpr {

double JointVector::max_rho() const {
    return std::max({rho1, rho2, rho3});
}

double JointVector::residual_scale() const {
    const double m = max_rho();
    return 1.0 + m * m;
}

HalfAngle HalfAngle::from_angle(double phi) {
    phi = normalize_angle(phi);
    if (phi == kPi) {
        return HalfAngle::infinite();
    }
    return {std::tan(0.5 * phi), false};
}

double HalfAngle::to_angle() const {
    if (at_infinity) {
        return kPi;
    }
    return 2.0 * std::atan(value);
}

double normalize_angle(double phi) {
    double r = std::remainder(phi, 2.0 * kPi);
    if (r <= -kPi) {
        r = kPi;  // remainder lands in [-pi, pi]; fold -pi onto +pi
    }
    return r;
}

double angle_distance(double a, double b) {
    return std::fabs(std::remainder(a - b, 2.0 * kPi));
}

void validate_geometry(const Geometry& g) {
    const bool finite = std::isfinite(g.c2) && std::isfinite(g.c3) && std::isfinite(g.d3) &&
                        std::isfinite(g.l2) && std::isfinite(g.l3) && std::isfinite(g.beta);
    if (!finite) {
        throw InvalidInputError("geometry parameters must be finite");
    }
    if (g.c2 <= 0.0 || g.l2 <= 0.0 || g.l3 <= 0.0) {
        throw InvalidInputError("geometry requires c2 > 0, l2 > 0, l3 > 0");
    }
}

void validate_joints(const JointVector& j) {
    const bool finite = std::isfinite(j.rho1) && std::isfinite(j.rho2) && std::isfinite(j.rho3);
    if (!finite) {
        throw InvalidInputError("joint lengths must be finite");
    }
    if (j.rho1 < 0.0 || j.rho2 < 0.0 || j.rho3 < 0.0) {
        throw InvalidInputError("joint lengths must be nonnegative");
    }
}

std::array<Vec2, 3> base_anchors(const Geometry& g) {
    return {Vec2{0.0, 0.0}, Vec2{g.c2, 0.0}, Vec2{g.c3, g.d3}};
}

std::array<Vec2, 3> platform_joints(const Geometry& g, const Pose& p) {
    const Vec2 b1{p.x, p.y};
    const Vec2 b2{p.x + g.l2 * std::cos(p.phi), p.y + g.l2 * std::sin(p.phi)};
    const Vec2 b3{p.x + g.l3 * std::cos(p.phi + g.beta), p.y + g.l3 * std::sin(p.phi + g.beta)};
    return {b1, b2, b3};
}

JointVector inverse_kinematics(const Geometry& g, const Pose& p) {
    const auto a = base_anchors(g);
    const auto b = platform_joints(g, p);
    return {(b[0] - a[0]).norm(), (b[1] - a[1]).norm(), (b[2] - a[2]).norm()};
}

std::array<double, 3> residuals(const Geometry& g, const Pose& p, const JointVector& j) {
    const auto a = base_anchors(g);
    const auto b = platform_joints(g, p);
    return {j.rho1 * j.rho1 - (b[0] - a[0]).norm2(),
            j.rho2 * j.rho2 - (b[1] - a[1]).norm2(),
            j.rho3 * j.rho3 - (b[2] - a[2]).norm2()};
}

double max_abs_residual(const Geometry& g, const Pose& p, const JointVector& j) {
    const auto r = residuals(g, p, j);
    return std::max({std::fabs(r[0]), std::fabs(r[1]), std::fabs(r[2])});
}

}  // namespace rpr
