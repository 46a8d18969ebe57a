#pragma once

#include <vector>

#include "trexkit/trex/ctrex.hpp"

namespace trexkit::trex {

struct PathPoint {
    double phi = 0.0;
    TrexSolution solution;
};

struct TrexPath {
    std::vector<PathPoint> points;   // one per grid value, in grid order
    Eigen::VectorXd entry_values;    // per feature: largest grid phi at which
                                     // |beta_hat_j| > support_threshold, else 0
    long long total_iterations = 0;  // summed over every subproblem solve
};

// Solves the full 2p decomposition at every phi of a strictly decreasing
// positive grid. Each (feature, sign) subproblem at grid point k starts from
// that same subproblem's solution at grid point k-1 (warm_starts can disable
// this for instrumentation). Throws std::invalid_argument on a bad grid.
TrexPath ctrex_path(const RegressionProblem& problem,
                    const std::vector<double>& phi_grid,
                    const TrexParams& params, int parallelism = 1,
                    bool warm_starts = true);

}  // namespace trexkit::trex
