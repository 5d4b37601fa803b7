#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rpr/charpoly.hpp"
#include "rpr/model.hpp"
#include "rpr/solution.hpp"

namespace rpr {

inline constexpr const char* kReportVersion = "rpr-report/1";

struct SolverOptions {
    double tol = 1e-8;
    bool run_oracle = false;
    int samples = 7200;
};

/// One problem instance as read from a JSON file: geometry (angle given as
/// exactly one of beta_deg/beta_rad), joints and/or a pose, solver options.
struct Problem {
    Geometry geometry;
    std::optional<JointVector> joints;
    std::optional<Pose> pose;
    SolverOptions options;
};

Problem parse_problem(const nlohmann::json& doc);
Problem load_problem(const std::string& path);

struct ReportSolution {
    double phi_deg = 0.0;
    double x = 0.0;
    double y = 0.0;
    std::string kind;  // "generic" | "degenerate"
    int multiplicity = 1;
    double max_residual = 0.0;

    bool operator==(const ReportSolution&) const = default;
};

struct OracleSection {
    std::vector<ReportSolution> solutions;
    bool match = false;

    bool operator==(const OracleSection&) const = default;
};

/// Machine-readable solve report. All numbers are rounded to 12 significant
/// digits on construction so serialization is lossless and byte-stable.
struct SolutionReport {
    std::string version = kReportVersion;
    std::string family;
    std::array<double, 3> family_residuals{};
    bool all_orientations_degenerate = false;
    std::vector<double> degenerate_orientations_deg;
    std::vector<double> active_condition_values;
    std::vector<double> charpoly_coeffs;  // ascending powers of t
    std::vector<ReportSolution> solutions;
    std::vector<std::string> warnings;
    std::optional<OracleSection> oracle;

    bool operator==(const SolutionReport&) const = default;
};

/// Rounds to 12 significant digits (the report serialization precision).
double round_sig(double v);

SolutionReport build_report(const Geometry& g, const FkOutcome& outcome);

void attach_oracle(SolutionReport& report, const std::vector<FkSolution>& oracle_solutions);

nlohmann::json report_to_json(const SolutionReport& report);
SolutionReport report_from_json(const nlohmann::json& doc);

/// Deterministic serialization (sorted keys, two-space indent).
std::string render_report(const SolutionReport& report);

std::string family_name(FamilyKind kind);

}  // namespace rpr
