#pragma once

#include <vector>

#include <Eigen/Core>

#include "trexkit/trex/problem.hpp"

namespace trexkit::lasso {

struct LassoSettings {
    int max_sweeps = 100000;   // full coordinate passes per grid point
    double tolerance = 1e-12;  // largest coordinate move that counts as converged
};

// (1/2) ||Y - X beta||^2 + lambda ||beta||_1
double lasso_objective(const trex::RegressionProblem& problem,
                       const Eigen::VectorXd& beta, double lambda);

// Worst stationarity violation at beta: for beta_j != 0 the correlation
// x_j'(Y - X beta) must equal lambda sign(beta_j); otherwise it must not
// exceed lambda in magnitude. Zero at an exact minimizer.
double kkt_residual(const trex::RegressionProblem& problem,
                    const Eigen::VectorXd& beta, double lambda);

// Cyclic coordinate descent. `warm` seeds the iterate when given.
Eigen::VectorXd lasso_fit(const trex::RegressionProblem& problem, double lambda,
                          const LassoSettings& settings = {},
                          const Eigen::VectorXd* warm = nullptr);

// count log-spaced penalties from ||X'Y||_inf down to ratio * ||X'Y||_inf.
std::vector<double> default_lambda_grid(const trex::RegressionProblem& problem,
                                        int count = 100, double ratio = 1e-3);

struct LassoPath {
    std::vector<double> lambda_grid;    // strictly decreasing, positive
    Eigen::MatrixXd coefficients;       // p x grid size, column k fits lambda_grid[k]
    Eigen::VectorXd entry_values;       // largest grid penalty at which each
                                        // feature is active, 0 if never
    std::vector<double> kkt_residuals;  // stationarity audit per grid point
};

// Fits the grid in order, warm-starting each point from the previous one.
// A feature is active at a grid point when its coefficient is nonzero or its
// correlation with the residual sits on the penalty boundary (within a 1e-9
// relative band), so features that enter exactly at a grid knot are counted.
LassoPath lasso_path(const trex::RegressionProblem& problem,
                     const std::vector<double>& lambda_grid,
                     const LassoSettings& settings = {});

}  // namespace trexkit::lasso
