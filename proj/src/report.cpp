#include "rpr/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "rpr/degeneracy.hpp"
#include "rpr/errors.hpp"

namespace rpr {

namespace {

double require_number(const nlohmann::json& obj, const char* key) {
    if (!obj.contains(key) || !obj[key].is_number()) {
        throw InvalidInputError(std::string("missing or non-numeric field: ") + key);
    }
    return obj[key].get<double>();
}

std::vector<double> rounded(const std::vector<double>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v) {
        out.push_back(round_sig(x));
    }
    return out;
}

ReportSolution to_report_solution(const FkSolution& s) {
    ReportSolution r;
    r.phi_deg = round_sig(s.pose.phi * 180.0 / kPi);
    r.x = round_sig(s.pose.x);
    r.y = round_sig(s.pose.y);
    r.kind = s.kind == SolutionKind::DegenerateRoot ? "degenerate" : "generic";
    r.multiplicity = s.multiplicity;
    r.max_residual = round_sig(s.max_residual);
    return r;
}

nlohmann::json solution_to_json(const ReportSolution& s) {
    return nlohmann::json{{"phi_deg", s.phi_deg}, {"x", s.x},
                          {"y", s.y},             {"kind", s.kind},
                          {"multiplicity", s.multiplicity}, {"max_residual", s.max_residual}};
}

ReportSolution solution_from_json(const nlohmann::json& doc) {
    ReportSolution s;
    s.phi_deg = doc.at("phi_deg").get<double>();
    s.x = doc.at("x").get<double>();
    s.y = doc.at("y").get<double>();
    s.kind = doc.at("kind").get<std::string>();
    s.multiplicity = doc.at("multiplicity").get<int>();
    s.max_residual = doc.at("max_residual").get<double>();
    return s;
}

}  // namespace

double round_sig(double v) {
    if (!std::isfinite(v) || v == 0.0) {
        return v == 0.0 ? 0.0 : v;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

Problem parse_problem(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("geometry") || !doc["geometry"].is_object()) {
        throw InvalidInputError("problem file must contain a geometry object");
    }
    const auto& geo = doc["geometry"];

    Problem p;
    p.geometry.c2 = require_number(geo, "c2");
    p.geometry.c3 = require_number(geo, "c3");
    p.geometry.d3 = require_number(geo, "d3");
    p.geometry.l2 = require_number(geo, "l2");
    p.geometry.l3 = require_number(geo, "l3");

    const bool has_deg = geo.contains("beta_deg");
    const bool has_rad = geo.contains("beta_rad");
    if (has_deg == has_rad) {
        throw InvalidInputError("geometry requires exactly one of beta_deg or beta_rad");
    }
    p.geometry.beta = has_deg ? normalize_angle(require_number(geo, "beta_deg") * kPi / 180.0)
                              : normalize_angle(require_number(geo, "beta_rad"));
    validate_geometry(p.geometry);

    if (doc.contains("joints")) {
        const auto& joints = doc["joints"];
        if (!joints.is_array() || joints.size() != 3 || !joints[0].is_number() ||
            !joints[1].is_number() || !joints[2].is_number()) {
            throw InvalidInputError("joints must be an array of three numbers");
        }
        JointVector j{joints[0].get<double>(), joints[1].get<double>(), joints[2].get<double>()};
        validate_joints(j);
        p.joints = j;
    }

    if (doc.contains("pose")) {
        const auto& pose = doc["pose"];
        if (!pose.is_object()) {
            throw InvalidInputError("pose must be an object");
        }
        Pose q;
        q.x = require_number(pose, "x");
        q.y = require_number(pose, "y");
        const bool pose_deg = pose.contains("phi_deg");
        const bool pose_rad = pose.contains("phi_rad");
        if (pose_deg == pose_rad) {
            throw InvalidInputError("pose requires exactly one of phi_deg or phi_rad");
        }
        q.phi = pose_deg ? normalize_angle(require_number(pose, "phi_deg") * kPi / 180.0)
                         : normalize_angle(require_number(pose, "phi_rad"));
        p.pose = q;
    }

    if (doc.contains("options")) {
        const auto& opt = doc["options"];
        if (!opt.is_object()) {
            throw InvalidInputError("options must be an object");
        }
        if (opt.contains("tol")) {
            p.options.tol = opt["tol"].get<double>();
            if (!(p.options.tol > 0.0)) {
                throw InvalidInputError("options.tol must be positive");
            }
        }
        if (opt.contains("oracle")) {
            p.options.run_oracle = opt["oracle"].get<bool>();
        }
        if (opt.contains("samples")) {
            p.options.samples = opt["samples"].get<int>();
            if (p.options.samples < 360) {
                throw InvalidInputError("options.samples must be at least 360");
            }
        }
    }
    return p;
}

Problem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInputError("cannot open problem file: " + path);
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInputError(std::string("problem file is not valid JSON: ") + e.what());
    }
    return parse_problem(doc);
}

SolutionReport build_report(const Geometry& g, const FkOutcome& outcome) {
    SolutionReport r;
    r.family = family_name(outcome.family.kind);
    for (std::size_t i = 0; i < 3; ++i) {
        r.family_residuals[i] = round_sig(outcome.family.residuals[i]);
    }

    const DegenerateOrientations orient = degenerate_orientations(g);
    r.all_orientations_degenerate = orient.all_orientations;
    for (const HalfAngle& t : orient.orientations) {
        r.degenerate_orientations_deg.push_back(round_sig(t.to_angle() * 180.0 / kPi));
    }
    for (const ActiveDegeneracy& a : outcome.active_degeneracies) {
        r.active_condition_values.push_back(round_sig(a.condition_value));
    }
    r.charpoly_coeffs = rounded(outcome.charpoly.coeffs());
    for (const FkSolution& s : outcome.solutions) {
        r.solutions.push_back(to_report_solution(s));
    }
    r.warnings = outcome.warnings;
    return r;
}

void attach_oracle(SolutionReport& report, const std::vector<FkSolution>& oracle_solutions) {
    OracleSection section;
    for (const FkSolution& s : oracle_solutions) {
        section.solutions.push_back(to_report_solution(s));
    }
    // match: same count and pairwise agreement within 1e-5 position, 0.01 deg
    section.match = section.solutions.size() == report.solutions.size();
    if (section.match) {
        for (std::size_t i = 0; i < section.solutions.size(); ++i) {
            const auto& a = section.solutions[i];
            const auto& b = report.solutions[i];
            double dphi = std::fabs(std::remainder((a.phi_deg - b.phi_deg) * kPi / 180.0, 2 * kPi));
            if (dphi * 180.0 / kPi > 0.01 || std::fabs(a.x - b.x) > 1e-5 ||
                std::fabs(a.y - b.y) > 1e-5) {
                section.match = false;
                break;
            }
        }
    }
    report.oracle = std::move(section);
}

nlohmann::json report_to_json(const SolutionReport& r) {
    nlohmann::json doc;
    doc["version"] = r.version;
    doc["family"] = r.family;
    doc["family_residuals"] = r.family_residuals;
    doc["all_orientations_degenerate"] = r.all_orientations_degenerate;
    doc["degenerate_orientations_deg"] = r.degenerate_orientations_deg;
    doc["active_condition_values"] = r.active_condition_values;
    doc["charpoly_coeffs"] = r.charpoly_coeffs;
    doc["solutions"] = nlohmann::json::array();
    for (const auto& s : r.solutions) {
        doc["solutions"].push_back(solution_to_json(s));
    }
    doc["warnings"] = r.warnings;
    if (r.oracle) {
        nlohmann::json o;
        o["solutions"] = nlohmann::json::array();
        for (const auto& s : r.oracle->solutions) {
            o["solutions"].push_back(solution_to_json(s));
        }
        o["match"] = r.oracle->match;
        doc["oracle"] = o;
    }
    return doc;
}

SolutionReport report_from_json(const nlohmann::json& doc) {
    SolutionReport r;
    r.version = doc.at("version").get<std::string>();
    r.family = doc.at("family").get<std::string>();
    r.family_residuals = doc.at("family_residuals").get<std::array<double, 3>>();
    r.all_orientations_degenerate = doc.at("all_orientations_degenerate").get<bool>();
    r.degenerate_orientations_deg =
        doc.at("degenerate_orientations_deg").get<std::vector<double>>();
    r.active_condition_values = doc.at("active_condition_values").get<std::vector<double>>();
    r.charpoly_coeffs = doc.at("charpoly_coeffs").get<std::vector<double>>();
    for (const auto& s : doc.at("solutions")) {
        r.solutions.push_back(solution_from_json(s));
    }
    r.warnings = doc.at("warnings").get<std::vector<std::string>>();
    if (doc.contains("oracle")) {
        OracleSection o;
        for (const auto& s : doc["oracle"].at("solutions")) {
            o.solutions.push_back(solution_from_json(s));
        }
        o.match = doc["oracle"].at("match").get<bool>();
        r.oracle = std::move(o);
    }
    return r;
}

std::string render_report(const SolutionReport& report) {
    return report_to_json(report).dump(2) + "\n";
}

std::string family_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::DegenerateFamily:
            return "DegenerateFamily";
        case FamilyKind::MirrorSimilarCongruent:
            return "MirrorSimilarCongruent";
        case FamilyKind::General:
            break;
    }
    return "General";
}

}  // namespace rpr
