#include "trexkit/conic/problem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace trexkit::conic {

namespace {

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

bool all_finite(const Eigen::SparseMatrix<double>& m) {
    for (int k = 0; k < m.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
            if (!std::isfinite(it.value())) return false;
        }
    }
    return true;
}

}  // namespace

Diagnostics validate(const ConicProblem& problem) {
    Diagnostics diag;
    auto report = [&diag](std::string msg) { diag.defects.push_back(std::move(msg)); };

    if (problem.c.size() != problem.A.cols()) {
        report("objective has " + std::to_string(problem.c.size()) +
               " entries but the constraint matrix has " +
               std::to_string(problem.A.cols()) + " columns");
    }
    if (problem.b.size() != problem.A.rows()) {
        report("right-hand side has " + std::to_string(problem.b.size()) +
               " entries but the constraint matrix has " +
               std::to_string(problem.A.rows()) + " rows");
    }
    if (problem.cones.zero_dim < 0) report("zero cone has negative dimension");
    if (problem.cones.nonneg_dim < 0) report("nonnegative cone has negative dimension");
    for (std::size_t i = 0; i < problem.cones.soc_dims.size(); ++i) {
        if (problem.cones.soc_dims[i] < 1) {
            report("second-order cone block " + std::to_string(i) +
                   " has dimension " + std::to_string(problem.cones.soc_dims[i]) +
                   " (must be at least 1)");
        }
    }
    const Eigen::Index cone_rows = problem.cones.total_rows();
    if (cone_rows != problem.A.rows()) {
        report("cone blocks cover " + std::to_string(cone_rows) +
               " rows but the constraint matrix has " +
               std::to_string(problem.A.rows()) + " rows");
    }
    if (!all_finite(problem.c)) report("objective contains non-finite entries");
    if (!all_finite(problem.b)) report("right-hand side contains non-finite entries");
    if (!all_finite(problem.A)) report("constraint matrix contains non-finite entries");
    return diag;
}

Residuals residuals(const ConicProblem& problem, const Candidate& candidate) {
    if (candidate.x.size() != problem.num_vars() ||
        candidate.y.size() != problem.num_rows() ||
        candidate.slack.size() != problem.num_rows()) {
        throw std::invalid_argument("candidate dimensions do not match the problem");
    }
    Residuals r;
    r.primal = (problem.A * candidate.x + candidate.slack - problem.b).norm() /
               (1.0 + problem.b.norm());
    r.dual = (problem.A.transpose() * candidate.y + problem.c).norm() /
             (1.0 + problem.c.norm());
    const double primal_obj = problem.c.dot(candidate.x);
    const double dual_obj = problem.b.dot(candidate.y);
    r.gap = std::abs(primal_obj + dual_obj) /
            (1.0 + std::abs(primal_obj) + std::abs(dual_obj));
    return r;
}

}  // namespace trexkit::conic
