#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "trexkit/knockoff/stats.hpp"
#include "trexkit/trex/problem.hpp"

namespace trexkit::knockoff {

struct SelectionResult {
    double threshold = std::numeric_limits<double>::infinity();
    std::vector<int> selected;  // 1-based feature indices, ascending
};

// Data-dependent threshold: the smallest t among the nonzero |W_j| with
//   #{j : W_j <= -t} / max(1, #{j : W_j >= t}) <= q,
// infinity (and an empty selection) when no candidate qualifies. The
// selection is every feature with W_j >= threshold.
SelectionResult knockoff_threshold(const Eigen::VectorXd& W, double q);

// Benjamini-Hochberg step-up on two-sided least-squares t-tests; needs more
// observations than features. Returns 1-based selected indices.
std::vector<int> bhq_select(const trex::RegressionProblem& problem, double q);

// Construction + statistic + threshold in one call.
struct FilterResult {
    KnockoffModel model;
    StatResult statistic;
    SelectionResult selection;
    std::string statistic_name;
    double q = 0.0;
};

FilterResult knockoff_filter(const trex::RegressionProblem& problem,
                             const std::string& statistic, double q,
                             std::uint64_t seed = 0, int parallelism = 1);

}  // namespace trexkit::knockoff
