#include "trexkit/knockoff/filter.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>

#include "trexkit/util/stats.hpp"

namespace trexkit::knockoff {

SelectionResult knockoff_threshold(const Eigen::VectorXd& W, double q) {
    if (!(q > 0.0) || q >= 1.0) {
        throw std::invalid_argument("target rate must lie in (0, 1)");
    }
    std::set<double> candidates;
    for (Eigen::Index j = 0; j < W.size(); ++j) {
        if (W(j) != 0.0) candidates.insert(std::abs(W(j)));
    }

    SelectionResult result;
    for (const double t : candidates) {  // ascending, first hit is the min
        int negatives = 0;
        int positives = 0;
        for (Eigen::Index j = 0; j < W.size(); ++j) {
            if (W(j) <= -t) ++negatives;
            if (W(j) >= t) ++positives;
        }
        const double ratio =
            static_cast<double>(negatives) / std::max(positives, 1);
        if (ratio <= q) {
            result.threshold = t;
            break;
        }
    }
    if (std::isfinite(result.threshold)) {
        for (Eigen::Index j = 0; j < W.size(); ++j) {
            if (W(j) >= result.threshold) {
                result.selected.push_back(static_cast<int>(j) + 1);
            }
        }
    }
    return result;
}

std::vector<int> bhq_select(const trex::RegressionProblem& problem, double q) {
    if (!(q > 0.0) || q >= 1.0) {
        throw std::invalid_argument("target rate must lie in (0, 1)");
    }
    const Eigen::Index n = problem.n();
    const Eigen::Index p = problem.p();
    if (n <= p) {
        throw std::invalid_argument(
            "least-squares t-tests need more observations than features");
    }

    const Eigen::MatrixXd gram = problem.X.transpose() * problem.X;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
        throw std::invalid_argument("design is rank deficient; t-tests undefined");
    }
    const Eigen::VectorXd beta = ldlt.solve(problem.X.transpose() * problem.Y);
    const double df = static_cast<double>(n - p);
    const double sigma2 = (problem.Y - problem.X * beta).squaredNorm() / df;
    const Eigen::MatrixXd gram_inv =
        ldlt.solve(Eigen::MatrixXd::Identity(p, p));

    std::vector<std::pair<double, int>> pvalues;  // (p-value, 1-based index)
    pvalues.reserve(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) {
        const double se = std::sqrt(sigma2 * gram_inv(j, j));
        const double t = se > 0.0 ? beta(j) / se
                                  : std::numeric_limits<double>::infinity();
        pvalues.emplace_back(student_t_two_sided_p(t, df),
                             static_cast<int>(j) + 1);
    }
    std::sort(pvalues.begin(), pvalues.end());

    int cutoff = 0;  // largest k with p_(k) <= k q / p
    for (int k = 1; k <= static_cast<int>(p); ++k) {
        if (pvalues[static_cast<std::size_t>(k - 1)].first <=
            q * k / static_cast<double>(p)) {
            cutoff = k;
        }
    }
    std::vector<int> selected;
    for (int k = 0; k < cutoff; ++k) {
        selected.push_back(pvalues[static_cast<std::size_t>(k)].second);
    }
    std::sort(selected.begin(), selected.end());
    return selected;
}

FilterResult knockoff_filter(const trex::RegressionProblem& problem,
                             const std::string& statistic, double q,
                             std::uint64_t seed, int parallelism) {
    FilterResult result;
    result.statistic_name = statistic;
    result.q = q;
    result.model = make_knockoffs(problem, seed);
    result.statistic = compute_statistic(result.model, statistic, parallelism);
    result.selection = knockoff_threshold(result.statistic.W, q);
    return result;
}

}  // namespace trexkit::knockoff
