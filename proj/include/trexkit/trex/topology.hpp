#pragma once

#include <utility>
#include <vector>

#include "trexkit/trex/ctrex.hpp"

namespace trexkit::trex {

// Landscape summary of the 2p subproblem values: sorted values, the
// per-feature minimum over the two signs, its reciprocal as an importance
// score, and equal-width histogram bins over the finished values.
struct TopologyReport {
    std::vector<double> sorted_values;        // ascending, optimal solves only
    Eigen::VectorXd per_feature_value;        // min over signs; +inf if both failed
    Eigen::VectorXd importance;               // 1 / per_feature_value; 0 if failed
    std::vector<Eigen::Index> importance_order;  // 1-based features, best first
    std::vector<double> histogram_edges;      // num_bins + 1 edges
    std::vector<int> histogram_counts;
    std::vector<std::pair<Eigen::Index, int>> failed;  // (1-based feature, sign)
};

TopologyReport topology_report(const TrexSolution& solution, int num_bins = 20);

}  // namespace trexkit::trex
