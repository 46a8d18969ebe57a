#pragma once

#include <Eigen/Core>

#include "trexkit/sim/config.hpp"
#include "trexkit/trex/problem.hpp"

namespace trexkit::sim {

struct SimData {
    trex::RegressionProblem problem;
    Eigen::VectorXd beta_star;
};

// The planted coefficient vector: the first `sparsity` entries follow the
// pattern (unit -> 1, amplitude -> value, ramp -> value * j / sparsity),
// the rest are zero.
Eigen::VectorXd planted_coefficients(const SimConfig& config);

// One synthetic data set, fully determined by (config.seed, rep_index):
// equi-correlated Gaussian features, the configured noise scenario, and
// column centering + unit normalization when config.normalize is set.
SimData gen_linear_data(const SimConfig& config, int rep_index);

// Euclidean distance ||beta_hat - beta_star||_2; lengths must match.
double estimation_error(const Eigen::VectorXd& beta_hat,
                        const Eigen::VectorXd& beta_star);

}  // namespace trexkit::sim
