#pragma once

#include <vector>

#include <Eigen/Core>

#include "trexkit/conic/solver.hpp"
#include "trexkit/trex/subproblem.hpp"

namespace trexkit::trex {

struct TrexParams {
    double phi = 0.5;
    double objective_tolerance = 1e-4;  // winner-comparison window
    double support_threshold = 1e-10;   // zero-detection level along paths
    // Cone-solver coefficients that are zero in exact arithmetic come back as
    // noise near the solver tolerance; path activity detection suppresses
    // anything below this floor as well. Smooth-heuristic paths produce exact
    // zeros and ignore it.
    double support_cleanup = 1e-5;
    conic::SolverSettings solver;
};

struct TrexSolution {
    Eigen::VectorXd beta_hat;
    double value = 0.0;          // minimum over all optimal subproblem values
    Eigen::Index winner_feature = 0;  // 1-based
    int winner_sign = 0;
    std::vector<SubproblemResult> all_values;  // feature-major, sign -1 then +1
};

// Certified global minimization: solves all 2p subproblems and takes the
// minimum. Ties within objective_tolerance of the minimum resolve to the
// lexicographically smallest (feature, sign), sign -1 before +1, so the
// result does not depend on the parallelism degree. Subproblems that fail
// numerically stay in all_values but are excluded from the argmin; if every
// one fails, SolverError is thrown.
TrexSolution ctrex(const RegressionProblem& problem, const TrexParams& params,
                   int parallelism = 1);

}  // namespace trexkit::trex
