#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rpr/charpoly.hpp"
#include "rpr/errors.hpp"
#include "rpr/oracle.hpp"
#include "rpr/report.hpp"
#include "rpr/svg.hpp"

namespace {

constexpr int kExitInvalidInput = 2;
constexpr int kExitInternalAssertion = 3;

struct CommonArgs {
    std::string problem_path;
    double tol = -1.0;     // negative: keep the file's value
    int samples = -1;
    bool oracle = false;
    std::string out_path;
};

rpr::Problem load_with_overrides(const CommonArgs& args) {
    rpr::Problem p = rpr::load_problem(args.problem_path);
    if (args.tol > 0.0) {
        p.options.tol = args.tol;
    }
    if (args.samples > 0) {
        if (args.samples < 360) {
            throw rpr::InvalidInputError("--samples must be at least 360");
        }
        p.options.samples = args.samples;
    }
    if (args.oracle) {
        p.options.run_oracle = true;
    }
    return p;
}

rpr::JointVector require_joints(const rpr::Problem& p) {
    if (!p.joints) {
        throw rpr::InvalidInputError("problem file must provide joints for this command");
    }
    return *p.joints;
}

void write_output(const CommonArgs& args, const std::string& payload) {
    if (args.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(args.out_path);
    if (!out) {
        throw rpr::InvalidInputError("cannot open output file: " + args.out_path);
    }
    out << payload;
}

int cmd_fk(const CommonArgs& args) {
    const rpr::Problem p = load_with_overrides(args);
    const rpr::JointVector j = require_joints(p);
    const rpr::FkOutcome outcome = rpr::solve_forward(p.geometry, j, p.options.tol);
    rpr::SolutionReport report = rpr::build_report(p.geometry, outcome);
    if (p.options.run_oracle) {
        rpr::SweepConfig cfg;
        cfg.samples = p.options.samples;
        rpr::attach_oracle(report, rpr::sweep_fk(p.geometry, j, cfg));
    }
    write_output(args, rpr::render_report(report));
    return 0;
}

int cmd_classify(const CommonArgs& args) {
    const rpr::Problem p = load_with_overrides(args);
    const rpr::FamilyClass family = rpr::classify_family(p.geometry);
    const rpr::DegenerateOrientations orient = rpr::degenerate_orientations(p.geometry);

    nlohmann::json doc;
    doc["version"] = rpr::kReportVersion;
    doc["family"] = rpr::family_name(family.kind);
    doc["family_residuals"] = {rpr::round_sig(family.residuals[0]),
                               rpr::round_sig(family.residuals[1]),
                               rpr::round_sig(family.residuals[2])};
    doc["all_orientations_degenerate"] = orient.all_orientations;
    doc["determinant_quadratic"] = {rpr::round_sig(orient.quadratic.coeff(0)),
                                    rpr::round_sig(orient.quadratic.coeff(1)),
                                    rpr::round_sig(orient.quadratic.coeff(2))};
    doc["degenerate_orientations_deg"] = nlohmann::json::array();
    for (const rpr::HalfAngle& t : orient.orientations) {
        doc["degenerate_orientations_deg"].push_back(
            rpr::round_sig(t.to_angle() * 180.0 / rpr::kPi));
    }
    if (p.joints) {
        doc["conditions"] = nlohmann::json::array();
        const rpr::RealPolynomial quartic = rpr::condition_quartic(p.geometry, *p.joints);
        const auto active = rpr::check_degenerate_input(p.geometry, *p.joints, p.options.tol);
        for (const rpr::HalfAngle& t : orient.orientations) {
            const double value = t.at_infinity ? quartic.coeff(4) : quartic.evaluate(t.value);
            bool is_active = false;
            for (const auto& a : active) {
                if (a.orientation.at_infinity == t.at_infinity &&
                    (t.at_infinity || a.orientation.value == t.value)) {
                    is_active = true;
                }
            }
            doc["conditions"].push_back(
                {{"orientation_deg", rpr::round_sig(t.to_angle() * 180.0 / rpr::kPi)},
                 {"value", rpr::round_sig(value)},
                 {"active", is_active}});
        }
    }
    write_output(args, doc.dump(2) + "\n");
    return 0;
}

int cmd_plot(const CommonArgs& args) {
    const rpr::Problem p = load_with_overrides(args);
    const rpr::JointVector j = require_joints(p);
    const rpr::FkOutcome outcome = rpr::solve_forward(p.geometry, j, p.options.tol);
    write_output(args, rpr::render_svg(p.geometry, outcome.solutions));
    return 0;
}

int cmd_oracle(const CommonArgs& args) {
    const rpr::Problem p = load_with_overrides(args);
    const rpr::JointVector j = require_joints(p);
    rpr::SweepConfig cfg;
    cfg.samples = p.options.samples;
    const auto solutions = rpr::sweep_fk(p.geometry, j, cfg);

    nlohmann::json doc;
    doc["version"] = rpr::kReportVersion;
    doc["solutions"] = nlohmann::json::array();
    for (const rpr::FkSolution& s : solutions) {
        doc["solutions"].push_back(
            {{"phi_deg", rpr::round_sig(s.pose.phi * 180.0 / rpr::kPi)},
             {"x", rpr::round_sig(s.pose.x)},
             {"y", rpr::round_sig(s.pose.y)},
             {"kind", s.kind == rpr::SolutionKind::DegenerateRoot ? "degenerate" : "generic"},
             {"max_residual", rpr::round_sig(s.max_residual)}});
    }
    write_output(args, doc.dump(2) + "\n");
    return 0;
}

int cmd_ik(const CommonArgs& args) {
    const rpr::Problem p = load_with_overrides(args);
    if (!p.pose) {
        throw rpr::InvalidInputError("problem file must provide a pose for the ik command");
    }
    const rpr::JointVector j = rpr::inverse_kinematics(p.geometry, *p.pose);
    nlohmann::json doc;
    doc["version"] = rpr::kReportVersion;
    doc["joints"] = {rpr::round_sig(j.rho1), rpr::round_sig(j.rho2), rpr::round_sig(j.rho3)};
    write_output(args, doc.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Forward/inverse kinematics of planar 3-RPR parallel manipulators"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&](CLI::App* cmd, bool with_oracle) {
        cmd->add_option("problem", args.problem_path, "problem JSON file")->required();
        cmd->add_option("--tol", args.tol, "override solver tolerance");
        cmd->add_option("--samples", args.samples, "orientation samples for the sweep");
        cmd->add_option("--out", args.out_path, "write output to a file instead of stdout");
        if (with_oracle) {
            cmd->add_flag("--oracle", args.oracle, "cross-check with the sweep solver");
        }
    };

    CLI::App* fk = app.add_subcommand("fk", "solve the forward kinematics");
    add_common(fk, true);
    CLI::App* classify =
        app.add_subcommand("classify", "family classification and degeneracy analysis");
    add_common(classify, false);
    CLI::App* plot = app.add_subcommand("plot", "render the assembly modes as SVG");
    add_common(plot, false);
    CLI::App* oracle = app.add_subcommand("oracle", "run only the sweep solver");
    add_common(oracle, false);
    CLI::App* ik = app.add_subcommand("ik", "joint lengths realizing a pose");
    add_common(ik, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInvalidInput;
    }

    try {
        if (fk->parsed()) return cmd_fk(args);
        if (classify->parsed()) return cmd_classify(args);
        if (plot->parsed()) return cmd_plot(args);
        if (oracle->parsed()) return cmd_oracle(args);
        if (ik->parsed()) return cmd_ik(args);
    } catch (const rpr::InternalAssertionError& e) {
        std::cerr << "internal assertion failure: " << e.what() << "\n";
        return kExitInternalAssertion;
    } catch (const rpr::InvalidInputError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return 0;
}
