#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "trexkit/trex/problem.hpp"

namespace trexkit::qtrex {

struct QtrexParams {
    int q_exponent = 40;  // even, >= 2
    double phi = 0.5;
    int n_starts = 21;
    double nonzero_fraction = 0.25;  // sparsity of the random starts
    int max_iterations = 10000;
    double step_tolerance = 1e-9;
    double value_tolerance = 1e-12;
    std::uint64_t seed = 0;
};

// Surrogate with the max-correlation denominator smoothed by an l_q norm:
//     ||Y - X beta||^2 / (phi ||X'(Y - X beta)||_q) + ||beta||_1.
// smooth_objective returns the full surrogate value; smooth_gradient is the
// gradient of the smooth (first) term only. Both raise SolverError when
// X'(Y - X beta) = 0 (flat denominator, no descent information).
double smooth_objective(const trex::RegressionProblem& problem,
                        const Eigen::VectorXd& beta, double phi,
                        int q_exponent);
Eigen::VectorXd smooth_gradient(const trex::RegressionProblem& problem,
                                const Eigen::VectorXd& beta, double phi,
                                int q_exponent);

struct SolveOutcome {
    Eigen::VectorXd beta;
    double smooth_value = 0.0;  // surrogate at the final point
    double exact_value = 0.0;   // canonical objective at the final point
    int iterations = 0;
    bool perturbed = false;  // hit a degenerate denominator and restarted
};

// Proximal gradient on the surrogate: Armijo backtracking (factor 0.5 from
// step 1.0) on the smooth part, soft-threshold step for the l1 part. The
// surrogate value never increases between accepted iterates.
SolveOutcome qtrex_solve(const trex::RegressionProblem& problem,
                         const QtrexParams& params,
                         const Eigen::VectorXd& initial_beta);

struct StartTrace {
    int start_index = 0;
    double smooth_value = 0.0;
    double exact_value = 0.0;
    int iterations = 0;
    bool perturbed = false;
};

struct QtrexResult {
    Eigen::VectorXd best_beta;
    double best_value = 0.0;  // minimum exact value across starts
    int best_start = 0;
    std::vector<StartTrace> traces;  // one per start, in start order
};

// Multistart: start 0 is the zero vector; starts 1..n-1 draw
// ceil(nonzero_fraction * p) coordinates at uniformly chosen positions from a
// standard normal, each start on its own RNG stream derived from
// (seed, start index), so the result is parallelism-invariant.
QtrexResult qtrex_multistart(const trex::RegressionProblem& problem,
                             const QtrexParams& params, int parallelism = 1);

// Flat per-start table (start, smooth_value, exact_value, iterations).
void write_traces_csv(const std::string& path, const QtrexResult& result);

}  // namespace trexkit::qtrex
