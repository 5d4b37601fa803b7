#pragma once

#include <vector>

#include "rpr/model.hpp"

namespace rpr {

enum class SolutionKind {
    GenericRoot,     // recovered through the regular 2x2 linear solve
    DegenerateRoot,  // recovered through the singular-system case ladder
};

/// One assembly mode: a validated forward-kinematics solution.
struct FkSolution {
    Pose pose;
    SolutionKind kind = SolutionKind::GenericRoot;
    int multiplicity = 1;       // multiplicity of the characteristic root
    double max_residual = 0.0;  // max |rho_i^2 - dist_i^2| over the legs
};

}  // namespace rpr
