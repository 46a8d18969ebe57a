#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "trexkit/knockoff/construct.hpp"
#include "trexkit/qtrex/qtrex.hpp"
#include "trexkit/trex/ctrex.hpp"

namespace trexkit::knockoff {

// Per-column importances Z (length 2p, original features first) and the
// paired statistics W_j = max(Z_j, Z_{j+p}) sign(Z_j - Z_{j+p}) (length p).
struct StatResult {
    Eigen::VectorXd Z;
    Eigen::VectorXd W;
};

// The pairing rule alone, exposed for direct checks.
Eigen::VectorXd signed_max_pairs(const Eigen::VectorXd& Z);

// Z_j = largest penalty on a log-spaced lasso grid at which column j is
// active (0 if never).
StatResult stat_lasso_signed_max(const KnockoffModel& model,
                                 int grid_size = 100, double grid_ratio = 1e-3);

enum class PathBackend { smooth, certified };

struct PhiPathSettings {
    std::vector<double> phi_grid;  // strictly decreasing; empty -> 1.5 .. 0.10
                                   // in steps of 0.05
    PathBackend backend = PathBackend::smooth;
    qtrex::QtrexParams smooth;     // single warm-started run per grid point
    trex::TrexParams certified;    // used when backend == certified
    int parallelism = 1;
    double active_threshold = 1e-10;
};

// Z_j = largest phi at which column j sits in the fitted support, scanning
// the grid downward with warm starts (the smooth backend starts from zero at
// the first point; the certified backend reuses its own per-subproblem warm
// starts).
StatResult stat_trex_phi_path(const KnockoffModel& model,
                              const PhiPathSettings& settings = {});

// Z_j = 1 / P_j where P_j is the smaller of the two single-column certified
// subproblem optima for column j of the augmented design.
StatResult stat_trex_fvalue(const KnockoffModel& model,
                            const trex::TrexParams& params = {},
                            int parallelism = 1);

// Dispatch by name: "lasso", "phi-path", or "f-value".
StatResult compute_statistic(const KnockoffModel& model, const std::string& name,
                             int parallelism = 1);

}  // namespace trexkit::knockoff
