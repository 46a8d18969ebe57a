#pragma once

#include <optional>

#include <Eigen/Core>

#include "trexkit/conic/problem.hpp"
#include "trexkit/conic/solver.hpp"
#include "trexkit/trex/problem.hpp"

namespace trexkit::trex {

// One of the 2p convex subproblems, indexed by a feature and a sign:
//
//     minimize ||Y - X beta||^2 / (v'(Y - X beta)) + ||beta||_1
//     over the half-space v'(Y - X beta) >= 0,   v = sign * phi * x_j.
//
// Cone form: variables (t_0, t_1..t_p, beta_1..beta_p), objective sum of t,
// one second-order cone of size n+2 encoding the quadratic-over-linear
// epigraph (which implies the half-space), and p cones of size 2 encoding
// |beta_j| <= t_j.
conic::ConicProblem assemble_subproblem(const RegressionProblem& problem,
                                        double phi, Eigen::Index column,
                                        int sign);

struct SubproblemResult {
    Eigen::Index feature = 0;  // 1-based, as reported everywhere downstream
    int sign = 0;              // -1 or +1
    Eigen::VectorXd beta;      // length p
    double value = 0.0;        // optimal value in the canonical objective scale
    conic::Status status = conic::Status::numerical_failure;
    int iterations = 0;
    conic::ConicSolution raw;  // full cone-program solution (warm-start fodder)
};

// `column` is the 0-based feature index; the result carries it 1-based.
SubproblemResult solve_subproblem(
    const RegressionProblem& problem, double phi, Eigen::Index column, int sign,
    const conic::SolverSettings& settings = {},
    const std::optional<conic::WarmStart>& warm = std::nullopt);

}  // namespace trexkit::trex
