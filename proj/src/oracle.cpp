#include "rpr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "rpr/errors.hpp"
#include "rpr/linear_system.hpp"

namespace rpr {

namespace {

// Leg pairing of one sweep pass: B1 is constrained to circle(A1, rho1) and
// to the moving circle of the tracked leg; the remaining leg's residual is
// swept for sign changes.
enum class Pass { TrackLeg2, TrackLeg3 };

struct BranchSample {
    Vec2 p;
    double f = 0.0;  // residual of the untracked leg
};

struct Track {
    Vec2 p;
    double f = 0.0;
    double phi = 0.0;
    int k = -1;
};

Vec2 moving_center(const Geometry& g, double phi, Pass pass) {
    if (pass == Pass::TrackLeg2) {
        return {g.c2 - g.l2 * std::cos(phi), -g.l2 * std::sin(phi)};
    }
    return {g.c3 - g.l3 * std::cos(phi + g.beta), g.d3 - g.l3 * std::sin(phi + g.beta)};
}

double untracked_residual(const Geometry& g, const JointVector& j, const Vec2& p, double phi,
                          Pass pass) {
    const auto r = residuals(g, Pose{p.x, p.y, phi}, j);
    return pass == Pass::TrackLeg2 ? r[2] : r[1];
}

std::vector<BranchSample> branch_points(const Geometry& g, const JointVector& j, double phi,
                                        Pass pass) {
    const double r_track = pass == Pass::TrackLeg2 ? j.rho2 : j.rho3;
    std::vector<BranchSample> out;
    for (const Vec2& p : circle_intersection({0.0, 0.0}, j.rho1, moving_center(g, phi, pass),
                                             r_track)) {
        out.push_back({p, untracked_residual(g, j, p, phi, pass)});
    }
    return out;
}

std::optional<BranchSample> nearest_branch(const Geometry& g, const JointVector& j, double phi,
                                           Pass pass, const Vec2& ref) {
    std::optional<BranchSample> best;
    double best_d = 0.0;
    for (const BranchSample& b : branch_points(g, j, phi, pass)) {
        const double d = (b.p - ref).norm();
        if (!best || d < best_d) {
            best = b;
            best_d = d;
        }
    }
    return best;
}

// Signed circle-overlap margin: h^2 of the intersection half-chord,
// negative when the circles do not meet. Smooth in phi away from d = 0.
double overlap_margin(const Geometry& g, const JointVector& j, double phi, Pass pass) {
    const double r1 = j.rho1;
    const double r2 = pass == Pass::TrackLeg2 ? j.rho2 : j.rho3;
    const Vec2 c = moving_center(g, phi, pass);
    const double d = c.norm();
    if (d <= 1e-14) {
        return -(1.0 + r1 * r1 + r2 * r2);
    }
    const double a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    return r1 * r1 - a * a;
}

Vec2 chord_midpoint(const Geometry& g, const JointVector& j, double phi, Pass pass) {
    const double r1 = j.rho1;
    const double r2 = pass == Pass::TrackLeg2 ? j.rho2 : j.rho3;
    const Vec2 c = moving_center(g, phi, pass);
    const double d = std::max(c.norm(), 1e-300);
    const double a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    return {a * c.x / d, a * c.y / d};
}

// Full-constraint Newton on (x, y, phi). Returns true when all three
// residuals are driven to the refinement tolerance.
bool newton_full(const Geometry& g, const JointVector& j, double& x, double& y, double& phi,
                 double f_tol) {
    for (int iter = 0; iter < 60; ++iter) {
        const auto r = residuals(g, Pose{x, y, phi}, j);
        const double worst = std::max({std::fabs(r[0]), std::fabs(r[1]), std::fabs(r[2])});
        if (worst <= f_tol) {
            return true;
        }
        const double c2p = x + g.l2 * std::cos(phi) - g.c2;
        const double s2p = y + g.l2 * std::sin(phi);
        const double c3p = x + g.l3 * std::cos(phi + g.beta) - g.c3;
        const double s3p = y + g.l3 * std::sin(phi + g.beta) - g.d3;
        // rows of the residual Jacobian
        const double a11 = -2.0 * x, a12 = -2.0 * y, a13 = 0.0;
        const double a21 = -2.0 * c2p, a22 = -2.0 * s2p;
        const double a23 = 2.0 * g.l2 * (c2p * std::sin(phi) - s2p * std::cos(phi));
        const double a31 = -2.0 * c3p, a32 = -2.0 * s3p;
        const double a33 =
            2.0 * g.l3 * (c3p * std::sin(phi + g.beta) - s3p * std::cos(phi + g.beta));
        const double det = a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
                           a13 * (a21 * a32 - a22 * a31);
        if (det == 0.0 || !std::isfinite(det)) {
            return false;
        }
        // Cramer solve of J * step = -residual
        const double b1 = -r[0], b2 = -r[1], b3 = -r[2];
        double dx = (b1 * (a22 * a33 - a23 * a32) - a12 * (b2 * a33 - a23 * b3) +
                     a13 * (b2 * a32 - a22 * b3)) /
                    det;
        double dy = (a11 * (b2 * a33 - a23 * b3) - b1 * (a21 * a33 - a23 * a31) +
                     a13 * (a21 * b3 - b2 * a31)) /
                    det;
        double dphi = (a11 * (a22 * b3 - b2 * a32) - a12 * (a21 * b3 - b2 * a31) +
                       b1 * (a21 * a32 - a22 * a31)) /
                      det;
        const double clamp = 0.5 * (1.0 + j.max_rho());
        const double step = std::max({std::fabs(dx), std::fabs(dy), std::fabs(dphi)});
        if (!std::isfinite(step)) {
            return false;
        }
        if (step > clamp) {
            dx *= clamp / step;
            dy *= clamp / step;
            dphi *= clamp / step;
        }
        x += dx;
        y += dy;
        phi += dphi;
    }
    const auto r = residuals(g, Pose{x, y, phi}, j);
    return std::max({std::fabs(r[0]), std::fabs(r[1]), std::fabs(r[2])}) <= f_tol;
}

void add_candidate(std::vector<FkSolution>& out, const Geometry& g, const JointVector& j,
                   const Vec2& p, double phi, const SweepConfig& cfg) {
    const Pose pose{p.x, p.y, normalize_angle(phi)};
    const double res = max_abs_residual(g, pose, j);
    if (res > cfg.accept_tol * j.residual_scale()) {
        return;
    }
    const double pos_tol = 1e-6 * (1.0 + j.max_rho());
    for (FkSolution& s : out) {
        if (angle_distance(s.pose.phi, pose.phi) <= 1e-6 && std::fabs(s.pose.x - pose.x) <= pos_tol &&
            std::fabs(s.pose.y - pose.y) <= pos_tol) {
            if (res < s.max_residual) {
                s.pose = pose;
                s.max_residual = res;
            }
            return;
        }
    }
    const LinearCoeffs c = linear_coeffs(g, j, pose.phi);
    const double det_scale = std::max({std::fabs(c.R * c.V), std::fabs(c.S * c.U),
                                       4.0 * (g.l2 + g.c2) * (g.l3 + std::fabs(g.d3))});
    const SolutionKind kind = std::fabs(c.det()) <= 1e-7 * det_scale
                                  ? SolutionKind::DegenerateRoot
                                  : SolutionKind::GenericRoot;
    out.push_back({pose, kind, 1, res});
}

void bisect_bracket(std::vector<FkSolution>& out, const Geometry& g, const JointVector& j,
                    Pass pass, const Track& a, double phi_b, const BranchSample& b,
                    const SweepConfig& cfg) {
    double lo = a.phi, hi = phi_b;
    double flo = a.f, fhi = b.f;
    Vec2 ref{0.5 * (a.p.x + b.p.x), 0.5 * (a.p.y + b.p.y)};
    Vec2 best_p = std::fabs(flo) < std::fabs(fhi) ? a.p : b.p;
    double best_phi = std::fabs(flo) < std::fabs(fhi) ? lo : hi;
    const double f_tol = cfg.refine_tol * j.residual_scale();

    for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const auto bm = nearest_branch(g, j, mid, pass, ref);
        if (!bm) {
            break;  // branch vanished inside the bracket (interior tangency)
        }
        ref = bm->p;
        if (std::fabs(bm->f) < std::min(std::fabs(flo), std::fabs(fhi))) {
            best_p = bm->p;
            best_phi = mid;
        }
        if (std::fabs(bm->f) <= f_tol) {
            best_p = bm->p;
            best_phi = mid;
            break;
        }
        if ((flo <= 0.0) == (bm->f <= 0.0)) {
            lo = mid;
            flo = bm->f;
        } else {
            hi = mid;
            fhi = bm->f;
        }
    }
    add_candidate(out, g, j, best_p, best_phi, cfg);
}

// Near a circle-pair tangency the branch pair may exist only inside a
// window far narrower than the sampling (the near-coalesced assembly
// modes at a workspace fold). Locate the tangency, then polish with the
// full-constraint Newton and recover the partner position.
void refine_tangency(std::vector<FkSolution>& out, const Geometry& g, const JointVector& j,
                     Pass pass, double phi_lo, double phi_hi, const SweepConfig& cfg) {
    double lo = phi_lo, hi = phi_hi;
    double mlo = overlap_margin(g, j, lo, pass);
    for (int iter = 0; iter < 80 && hi - lo > 1e-14; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double mm = overlap_margin(g, j, mid, pass);
        if ((mm <= 0.0) == (mlo <= 0.0)) {
            lo = mid;
            mlo = mm;
        } else {
            hi = mid;
        }
    }
    const double phi_t = 0.5 * (lo + hi);
    const Vec2 seed = chord_midpoint(g, j, phi_t, pass);
    const double loose = 0.05 * j.residual_scale();
    if (std::fabs(untracked_residual(g, j, seed, phi_t, pass)) > loose) {
        return;
    }
    double x = seed.x, y = seed.y, phi = phi_t;
    if (!newton_full(g, j, x, y, phi, cfg.refine_tol * j.residual_scale())) {
        return;
    }
    add_candidate(out, g, j, {x, y}, phi, cfg);
    // partner position: the other branch at the converged orientation, both
    // directly and through a mirrored Newton seed
    for (const BranchSample& b : branch_points(g, j, phi, pass)) {
        add_candidate(out, g, j, b.p, phi, cfg);
    }
    const Vec2 mid_conv = chord_midpoint(g, j, phi, pass);
    double mx = 2.0 * mid_conv.x - x, my = 2.0 * mid_conv.y - y, mphi = phi;
    if (newton_full(g, j, mx, my, mphi, cfg.refine_tol * j.residual_scale())) {
        add_candidate(out, g, j, {mx, my}, mphi, cfg);
    }
}

void run_pass(std::vector<FkSolution>& out, const Geometry& g, const JointVector& j, Pass pass,
              const SweepConfig& cfg) {
    const int n = cfg.samples;
    const double step = 2.0 * kPi / n;
    const double f_exact = cfg.refine_tol * j.residual_scale();
    constexpr int kMaxGap = 3;

    std::vector<Track> open;
    double prev_margin = overlap_margin(g, j, -kPi, pass);
    for (int k = 0; k <= n; ++k) {
        const double phi = -kPi + step * k;
        if (k > 0) {
            const double margin = overlap_margin(g, j, phi, pass);
            if ((margin <= 0.0) != (prev_margin <= 0.0)) {
                refine_tangency(out, g, j, pass, phi - step, phi, cfg);
            }
            prev_margin = margin;
        }
        std::vector<BranchSample> pts = branch_points(g, j, phi, pass);

        std::vector<bool> used(open.size(), false);
        for (const BranchSample& b : pts) {
            if (std::fabs(b.f) <= f_exact) {
                add_candidate(out, g, j, b.p, phi, cfg);
            }
            int match = -1;
            double match_d = 0.0;
            for (std::size_t i = 0; i < open.size(); ++i) {
                if (used[i] || k - open[i].k > kMaxGap) {
                    continue;
                }
                const double d = (b.p - open[i].p).norm();
                if (match < 0 || d < match_d) {
                    match = static_cast<int>(i);
                    match_d = d;
                }
            }
            if (match >= 0) {
                used[static_cast<std::size_t>(match)] = true;
                Track& tr = open[static_cast<std::size_t>(match)];
                if ((tr.f <= 0.0) != (b.f <= 0.0) || tr.f == 0.0) {
                    bisect_bracket(out, g, j, pass, tr, phi, b, cfg);
                }
                tr.p = b.p;
                tr.f = b.f;
                tr.phi = phi;
                tr.k = k;
            } else {
                open.push_back({b.p, b.f, phi, k});
                used.push_back(true);
            }
        }
        std::erase_if(open, [&](const Track& tr) { return k - tr.k > kMaxGap; });
    }
}

}  // namespace

std::vector<Vec2> circle_intersection(const Vec2& center1, double r1, const Vec2& center2,
                                      double r2) {
    const Vec2 delta = center2 - center1;
    const double d = delta.norm();
    if (d <= 0.0) {
        return {};  // coincident centers: no isolated intersection points
    }
    const double a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    const double h2 = r1 * r1 - a * a;
    const double tol = 1e-12 * (r1 * r1 + r2 * r2 + d * d);
    const Vec2 u{delta.x / d, delta.y / d};
    const Vec2 base{center1.x + a * u.x, center1.y + a * u.y};
    if (h2 < -tol) {
        return {};
    }
    if (h2 <= tol) {
        return {base};
    }
    const double h = std::sqrt(h2);
    return {Vec2{base.x - h * u.y, base.y + h * u.x}, Vec2{base.x + h * u.y, base.y - h * u.x}};
}

std::vector<FkSolution> sweep_fk(const Geometry& g, const JointVector& j, const SweepConfig& cfg) {
    validate_geometry(g);
    validate_joints(j);
    if (cfg.samples < 360) {
        throw InvalidInputError("sweep requires at least 360 orientation samples");
    }

    std::vector<FkSolution> out;
    run_pass(out, g, j, Pass::TrackLeg2, cfg);
    run_pass(out, g, j, Pass::TrackLeg3, cfg);

    std::sort(out.begin(), out.end(), [](const FkSolution& a, const FkSolution& b) {
        if (a.pose.phi != b.pose.phi) return a.pose.phi < b.pose.phi;
        return a.pose.x < b.pose.x;
    });
    return out;
}

}  // namespace rpr
