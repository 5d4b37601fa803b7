// Acceptance suite: prints one PASS/FAIL line per criterion and exits with
// the number of failed criteria. Run directly or through ctest.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "rpr/charpoly.hpp"
#include "rpr/oracle.hpp"
#include "support/generators.hpp"
#include "support/reference_instances.hpp"

using namespace rpr;
using namespace rpr::testing;

namespace {

int g_failures = 0;
int g_max_solution_count = 0;  // tracked across every randomized solve

void report(int number, const char* label, bool ok, const std::string& detail = "") {
    std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number, label,
                detail.empty() ? "" : " — ", detail.c_str());
    if (!ok) {
        ++g_failures;
    }
}

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

void track(const std::vector<FkSolution>& sols) {
    g_max_solution_count = std::max(g_max_solution_count, static_cast<int>(sols.size()));
}

bool pose_in(const std::vector<FkSolution>& sols, double phi_deg, double x, double y,
             double pos_tol, double ang_tol_deg) {
    for (const FkSolution& s : sols) {
        if (angle_distance(s.pose.phi, phi_deg * kPi / 180.0) <= ang_tol_deg * kPi / 180.0 &&
            std::fabs(s.pose.x - x) <= pos_tol && std::fabs(s.pose.y - y) <= pos_tol) {
            return true;
        }
    }
    return false;
}

// 1. cubic characteristic polynomial proportional to (161,-239,-239,161),
//    relative deviation < 1e-10
void criterion1() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    try {
        const RealPolynomial cubic = cubic_characteristic(kFamilyRef, kFamilyRefJoints);
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            num += cubic.coeff(k) * kFamilyRefCubicInteger[k];
            den += kFamilyRefCubicInteger[k] * kFamilyRefCubicInteger[k];
        }
        const double lambda = num / den;
        double worst = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            worst = std::max(worst, std::fabs(cubic.coeff(k) - lambda * kFamilyRefCubicInteger[k]) /
                                        std::fabs(lambda * kFamilyRefCubicInteger[k]));
        }
        ok = worst < 1e-10;
        const double elapsed = ms_since(start);
        ok = ok && elapsed < 1000.0;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "max relative deviation %.3g, scale %.6g, %.2f ms", worst,
                      lambda, elapsed);
        detail = buf;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(1, "family cubic reproduces the published integer polynomial", ok, detail);
}

// 2. family reference: exactly 6 solutions at the published orientations and
//    positions
void criterion2() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    try {
        const auto sols = forward_kinematics(kFamilyRef, kFamilyRefJoints);
        track(sols);
        ok = sols.size() == 6;
        const double orientations[3] = {-90.0, 53.610, 126.389};
        for (double want : orientations) {
            int count = 0;
            for (const FkSolution& s : sols) {
                if (angle_distance(s.pose.phi, want * kPi / 180.0) <= 0.01 * kPi / 180.0) {
                    ++count;
                }
            }
            ok = ok && count == 2;
        }
        for (const ReferenceSolution& want : kFamilyRefPrinted) {
            ok = ok && pose_in(sols, want.phi_deg, want.x, want.y, 2e-3, 0.01);
        }
        const double elapsed = ms_since(start);
        ok = ok && elapsed < 1000.0;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%zu solutions, %.2f ms", sols.size(), elapsed);
        detail = buf;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(2, "family reference solution set matches the published table", ok, detail);
}

// 3. general reference with rho3 = 7/10: published quartic orientations,
//    degenerate positions, quartic factor; rho3 = 3/5 fails residuals
void criterion3() {
    bool ok = true;
    std::string detail;
    try {
        const auto sols = forward_kinematics(kGeneralRef, kGeneralRefJoints);
        track(sols);
        ok = sols.size() == 6;
        for (const ReferenceSolution& want : kGeneralRefPrintedQuartic) {
            ok = ok && pose_in(sols, want.phi_deg, want.x, want.y, 2e-3, 0.01);
        }
        for (const ReferenceSolution& want : kGeneralRefPrintedDegenerate) {
            ok = ok && pose_in(sols, 0.0, want.x, want.y, 2e-3, 1e-7);
        }

        // characteristic polynomial factors as t^2 times the published quartic
        const RealPolynomial p = characteristic_polynomial(kGeneralRef, kGeneralRefJoints);
        const double scale = p.max_abs_coeff();
        ok = ok && std::fabs(p.coeff(0)) <= 1e-8 * scale && std::fabs(p.coeff(1)) <= 1e-8 * scale;
        const auto printed = printed_quartic(1.0, 0.49);
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < 5; ++k) {
            num += p.coeff(2 + k) * printed[4 - k];
            den += printed[4 - k] * printed[4 - k];
        }
        const double lambda = num / den;
        double worst = 0.0;
        for (std::size_t k = 0; k < 5; ++k) {
            worst = std::max(worst, std::fabs(p.coeff(2 + k) - lambda * printed[4 - k]) /
                                        std::fabs(lambda * printed[4 - k]));
        }
        ok = ok && worst < 1e-8;

        // the table caption's rho3 = 3/5 is inconsistent with the degenerate
        // positions; 7/10 is consistent at print precision
        const Pose printed_pose{-0.1394, -0.9902, 0.0};
        const double res_caption =
            max_abs_residual(kGeneralRef, printed_pose, {1.0, 1.0, 0.6});
        const double res_text = max_abs_residual(kGeneralRef, printed_pose, {1.0, 1.0, 0.7});
        ok = ok && res_caption > 0.1 && res_text < 5e-3;

        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "quartic deviation %.3g, residual(3/5)=%.3g, residual(7/10)=%.3g", worst,
                      res_caption, res_text);
        detail = buf;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(3, "degenerate-root reference matches the published quartic and positions", ok, detail);
}

// 4. equal base sides with rho1 = rho2: double root at t = 0; perturbation
//    splits or removes it
void criterion4() {
    bool ok = true;
    std::string detail;
    int verified = 0;
    try {
        std::mt19937_64 rng(910);
        for (int i = 0; i < 50; ++i) {
            const Geometry g = random_equal_base_geometry(rng);
            const double rho = uniform(rng, 0.4, 2.2);
            JointVector j{rho, rho, uniform(rng, 0.3, 2.2)};

            const RootSet before = real_roots(characteristic_polynomial(g, j));
            bool double_at_zero = false;
            for (const RootRecord& r : before.roots) {
                if (std::fabs(r.value) < 1e-6 && r.multiplicity >= 2) {
                    double_at_zero = true;
                }
            }

            j.rho2 += 1e-3;
            const RootSet after = real_roots(characteristic_polynomial(g, j), 1e-8);
            bool still_double_near_zero = false;
            for (const RootRecord& r : after.roots) {
                if (std::fabs(r.value) < 1e-4 && r.multiplicity >= 2) {
                    still_double_near_zero = true;
                }
            }
            if (double_at_zero && !still_double_near_zero) {
                ++verified;
            }
        }
        ok = verified == 50;
        detail = std::to_string(verified) + "/50 instances";
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(4, "parallelogram double root appears and splits under perturbation", ok, detail);
}

// 5. 1000 random round trips: the seeded pose is recovered and every
//    solution passes the residual gate
void criterion5() {
    bool ok = true;
    std::string detail;
    int recovered = 0;
    double worst_res = 0.0;
    try {
        std::mt19937_64 rng(911);
        for (int i = 0; i < 1000; ++i) {
            const Geometry g = random_geometry(rng);
            const Pose seed = random_pose(rng);
            const JointVector j = inverse_kinematics(g, seed);
            const auto sols = forward_kinematics(g, j);
            track(sols);
            if (pose_in(sols, seed.phi * 180.0 / kPi, seed.x, seed.y, 1e-6,
                        1e-6 * 180.0 / kPi)) {
                ++recovered;
            }
            for (const FkSolution& s : sols) {
                worst_res = std::max(worst_res, s.max_residual / j.residual_scale());
            }
        }
        ok = recovered == 1000 && worst_res < 1e-8;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%d/1000 recovered, worst scaled residual %.3g",
                      recovered, worst_res);
        detail = buf;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(5, "round-trip property over 1000 random instances", ok, detail);
}

// 6. oracle equivalence on 200 mixed instances inside 60 s
void criterion6() {
    bool ok = true;
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    int matched = 0;
    try {
        std::mt19937_64 rng(912);
        for (int i = 0; i < 200; ++i) {
            Geometry g;
            JointVector j;
            const int bucket = i % 4;
            if (bucket == 0) {
                g = random_family_geometry(rng);
                j = inverse_kinematics(g, random_pose(rng, 0.9));
            } else if (bucket == 1) {
                g = random_equal_base_geometry(rng);
                const double rho = uniform(rng, 0.4, 2.0);
                j = {rho, rho, uniform(rng, 0.3, 2.0)};  // exactly degenerate input
            } else if (bucket == 2) {
                g = random_equal_base_geometry(rng);
                const double rho = uniform(rng, 0.4, 2.0);
                j = {rho, rho + 1e-5, uniform(rng, 0.3, 2.0)};  // near-degenerate input
            } else {
                g = random_geometry(rng);
                j = inverse_kinematics(g, random_pose(rng, 0.95));
            }

            const auto pipeline = forward_kinematics(g, j);
            const auto swept = sweep_fk(g, j);
            track(pipeline);
            track(swept);

            bool match = pipeline.size() == swept.size();
            if (match) {
                std::vector<bool> used(swept.size(), false);
                for (const FkSolution& s : pipeline) {
                    bool found = false;
                    for (std::size_t k = 0; k < swept.size(); ++k) {
                        if (!used[k] &&
                            angle_distance(s.pose.phi, swept[k].pose.phi) <= 0.01 * kPi / 180.0 &&
                            std::fabs(s.pose.x - swept[k].pose.x) <= 1e-5 &&
                            std::fabs(s.pose.y - swept[k].pose.y) <= 1e-5) {
                            used[k] = true;
                            found = true;
                            break;
                        }
                    }
                    match = match && found;
                }
            }
            if (match) {
                ++matched;
            }
        }
        const double elapsed = ms_since(start);
        ok = matched == 200 && elapsed < 60000.0;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%d/200 matched, %.1f s", matched, elapsed / 1000.0);
        detail = buf;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(6, "sweep oracle equivalence on 200 mixed instances", ok, detail);
}

// 7. family invariants: vanishing determinant quadratic, <= 3 orientations,
//    <= 2 positions per orientation
void criterion7() {
    bool ok = true;
    std::string detail;
    try {
        std::mt19937_64 rng(913);
        for (int i = 0; i < 50 && ok; ++i) {
            const Geometry g = random_family_geometry(rng);
            const DegenerateOrientations d = degenerate_orientations(g);
            ok = ok && d.all_orientations;
            const double scale = determinant_coeff_scale(g) / 4.0;
            for (std::size_t k = 0; k < 3; ++k) {
                ok = ok && std::fabs(d.quadratic.coeff(k)) < 1e-12 * scale;
            }

            const JointVector j = inverse_kinematics(g, random_pose(rng, 0.9));
            const auto sols = forward_kinematics_family(g, j);
            track(sols);
            std::vector<double> orientations;
            for (const FkSolution& s : sols) {
                bool seen = false;
                int at_this = 0;
                for (const FkSolution& other : sols) {
                    if (angle_distance(s.pose.phi, other.pose.phi) < 1e-9) {
                        ++at_this;
                    }
                }
                ok = ok && at_this <= 2;
                for (double phi : orientations) {
                    if (angle_distance(phi, s.pose.phi) < 1e-9) {
                        seen = true;
                    }
                }
                if (!seen) {
                    orientations.push_back(s.pose.phi);
                }
            }
            ok = ok && orientations.size() <= 3;
        }
        detail = "50 family instances";
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(7, "family invariants hold on random family geometries", ok, detail);
}

// 8. no randomized suite ever produced more than 6 validated solutions
void criterion8() {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max observed count %d", g_max_solution_count);
    report(8, "solution count never exceeds the degree bound of 6", g_max_solution_count <= 6,
           buf);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    }
    return g_failures;
}
