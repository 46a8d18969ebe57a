#include "trexkit/trex/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace trexkit::trex {

TopologyReport topology_report(const TrexSolution& solution, int num_bins) {
    if (num_bins < 1) throw std::invalid_argument("need at least one histogram bin");
    if (solution.all_values.empty()) {
        throw std::invalid_argument("solution carries no subproblem values");
    }
    const Eigen::Index p =
        static_cast<Eigen::Index>(solution.all_values.size()) / 2;
    constexpr double inf = std::numeric_limits<double>::infinity();

    TopologyReport report;
    report.per_feature_value = Eigen::VectorXd::Constant(p, inf);
    for (const auto& sub : solution.all_values) {
        if (sub.status == conic::Status::optimal) {
            report.sorted_values.push_back(sub.value);
            double& pf = report.per_feature_value(sub.feature - 1);
            pf = std::min(pf, sub.value);
        } else {
            report.failed.emplace_back(sub.feature, sub.sign);
        }
    }
    std::sort(report.sorted_values.begin(), report.sorted_values.end());

    report.importance = Eigen::VectorXd::Zero(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const double pf = report.per_feature_value(j);
        if (std::isfinite(pf)) {
            report.importance(j) = pf > 0.0 ? 1.0 / pf : inf;
        }
    }
    report.importance_order.resize(static_cast<std::size_t>(p));
    std::iota(report.importance_order.begin(), report.importance_order.end(),
              Eigen::Index{1});
    std::stable_sort(report.importance_order.begin(), report.importance_order.end(),
                     [&](Eigen::Index a, Eigen::Index b) {
                         return report.importance(a - 1) > report.importance(b - 1);
                     });

    if (!report.sorted_values.empty()) {
        const double lo = report.sorted_values.front();
        const double hi = report.sorted_values.back();
        const double width = (hi - lo) / num_bins;
        report.histogram_edges.resize(static_cast<std::size_t>(num_bins) + 1);
        for (int e = 0; e <= num_bins; ++e) {
            report.histogram_edges[static_cast<std::size_t>(e)] = lo + e * width;
        }
        report.histogram_edges.back() = hi;
        report.histogram_counts.assign(static_cast<std::size_t>(num_bins), 0);
        for (const double v : report.sorted_values) {
            int bin = width > 0.0 ? static_cast<int>((v - lo) / width) : 0;
            bin = std::clamp(bin, 0, num_bins - 1);
            ++report.histogram_counts[static_cast<std::size_t>(bin)];
        }
    }
    return report;
}

}  // namespace trexkit::trex
