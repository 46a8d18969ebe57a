#pragma once

#include <Eigen/Core>

#include "trexkit/trex/problem.hpp"

namespace trexkit::trex {

// Canonical objective
//
//     ||Y - X beta||^2 / (phi * max_j |x_j'(Y - X beta)|) + ||beta||_1.
//
// When the residual is exactly zero the value is ||beta||_1 (the limit along
// rays into the fit point). A zero denominator with a nonzero residual has no
// continuous extension and raises SolverError.
double trex_objective(const RegressionProblem& problem,
                      const Eigen::VectorXd& beta, double phi);

}  // namespace trexkit::trex
