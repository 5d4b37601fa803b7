#pragma once

#include <array>
#include <cmath>

namespace rpr {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
};

/// Geometric parameters of a planar 3-RPR manipulator.
///
/// Base anchors: A1 = (0,0), A2 = (c2,0), A3 = (c3,d3).
/// Platform, in its own frame attached at B1: B2 at distance l2 along the
/// platform axis, B3 at distance l3 under angle beta from that axis.
struct Geometry {
    double c2 = 1.0;    // base side A1A2
    double c3 = 0.0;    // A3 x-coordinate
    double d3 = 1.0;    // A3 y-coordinate
    double l2 = 1.0;    // platform side B1B2
    double l3 = 1.0;    // platform diagonal B1B3
    double beta = 0.0;  // angle of B1B3 relative to B1B2, radians, (-pi, pi]
};

/// Platform output coordinates: operation point B1 and orientation.
struct Pose {
    double x = 0.0;
    double y = 0.0;
    double phi = 0.0;  // radians, normalized to (-pi, pi]
};

/// Actuated prismatic joint lengths. Only nonnegative values are meaningful.
struct JointVector {
    double rho1 = 0.0;
    double rho2 = 0.0;
    double rho3 = 0.0;

    double max_rho() const;
    /// 1 + rho_max^2 — the natural scale of the squared constraint residuals.
    double residual_scale() const;
};

/// Orientation as t = tan(phi/2). phi = pi is not reachable by finite t and
/// carries a dedicated flag.
struct HalfAngle {
    double value = 0.0;
    bool at_infinity = false;

    static HalfAngle infinite() { return {0.0, true}; }
    static HalfAngle from_angle(double phi);
    double to_angle() const;
};

/// Wraps an angle into (-pi, pi].
double normalize_angle(double phi);

/// Absolute angular distance between two orientations (wraps at +/-pi).
double angle_distance(double a, double b);

/// Throws InvalidInputError unless c2, l2, l3 > 0 and all fields are finite.
void validate_geometry(const Geometry& g);

/// Throws InvalidInputError unless all joint values are finite and >= 0.
void validate_joints(const JointVector& j);

std::array<Vec2, 3> base_anchors(const Geometry& g);
std::array<Vec2, 3> platform_joints(const Geometry& g, const Pose& p);

/// Leg lengths realizing the pose: rho_i = |B_i - A_i|. Total function.
JointVector inverse_kinematics(const Geometry& g, const Pose& p);

/// Signed constraint residuals rho_i^2 - |B_i - A_i|^2. All zero exactly
/// when (p, j) is a consistent configuration.
std::array<double, 3> residuals(const Geometry& g, const Pose& p, const JointVector& j);

double max_abs_residual(const Geometry& g, const Pose& p, const JointVector& j);

}  // namespace rpr
