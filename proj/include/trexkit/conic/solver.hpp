#pragma once

#include <optional>

#include <Eigen/Core>

#include "trexkit/conic/problem.hpp"

namespace trexkit::conic {

enum class Status {
    optimal,
    infeasible,
    unbounded,
    max_iterations,
    numerical_failure,
};

const char* to_string(Status status);

struct SolverSettings {
    double eps = 1e-8;               // target for all three normalized residuals
    int max_iterations = 100000;
    double over_relaxation = 1.5;    // alpha in (0, 2)
    bool scaling = true;             // Ruiz equilibration of the data
    int scaling_passes = 10;
    int check_interval = 10;         // residual/certificate check cadence
};

struct ConicSolution {
    Status status = Status::numerical_failure;
    Eigen::VectorXd x;
    Eigen::VectorXd y;
    Eigen::VectorXd slack;
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double duality_gap = 0.0;
};

// Primal/dual pair used to warm-start a solve. Any triple of the right
// dimensions is accepted; the solver converges from arbitrary starting points.
struct WarmStart {
    Eigen::VectorXd x;
    Eigen::VectorXd y;
    Eigen::VectorXd slack;
};

// Operator-splitting solver on the homogeneous self-dual embedding.
// Deterministic: the iterate sequence depends only on (problem, settings,
// warm start). Throws std::invalid_argument if validate(problem) fails.
ConicSolution solve(const ConicProblem& problem,
                    const SolverSettings& settings = {},
                    const std::optional<WarmStart>& warm = std::nullopt);

}  // namespace trexkit::conic
