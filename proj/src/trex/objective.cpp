#include "trexkit/trex/objective.hpp"

#include <stdexcept>

#include "trexkit/errors.hpp"

namespace trexkit::trex {

double trex_objective(const RegressionProblem& problem,
                      const Eigen::VectorXd& beta, double phi) {
    if (beta.size() != problem.p()) {
        throw std::invalid_argument("coefficient vector length does not match the design");
    }
    if (!(phi > 0.0)) {
        throw std::invalid_argument("phi must be positive");
    }
    const Eigen::VectorXd residual = problem.Y - problem.X * beta;
    const double l1 = beta.lpNorm<1>();
    if (residual.lpNorm<Eigen::Infinity>() == 0.0) {
        return l1;
    }
    const double corr = (problem.X.transpose() * residual).lpNorm<Eigen::Infinity>();
    if (corr == 0.0) {
        throw SolverError(
            "objective undefined: nonzero residual is uncorrelated with every feature");
    }
    return residual.squaredNorm() / (phi * corr) + l1;
}

}  // namespace trexkit::trex
