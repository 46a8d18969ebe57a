#include "trexkit/lasso/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trexkit::lasso {

namespace {

double soft(double value, double level) {
    if (value > level) return value - level;
    if (value < -level) return value + level;
    return 0.0;
}

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("penalty must be positive and finite");
    }
}

void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("penalty grid is empty");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        check_lambda(grid[k]);
        if (k > 0 && grid[k] >= grid[k - 1]) {
            throw std::invalid_argument("penalty grid must be strictly decreasing");
        }
    }
}

}  // namespace

double lasso_objective(const trex::RegressionProblem& problem,
                       const Eigen::VectorXd& beta, double lambda) {
    if (beta.size() != problem.p()) {
        throw std::invalid_argument("coefficient vector length does not match the design");
    }
    check_lambda(lambda);
    const Eigen::VectorXd r = problem.Y - problem.X * beta;
    return 0.5 * r.squaredNorm() + lambda * beta.lpNorm<1>();
}

double kkt_residual(const trex::RegressionProblem& problem,
                    const Eigen::VectorXd& beta, double lambda) {
    if (beta.size() != problem.p()) {
        throw std::invalid_argument("coefficient vector length does not match the design");
    }
    check_lambda(lambda);
    const Eigen::VectorXd g = problem.X.transpose() * (problem.Y - problem.X * beta);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
        double violation;
        if (beta(j) > 0.0) {
            violation = std::abs(g(j) - lambda);
        } else if (beta(j) < 0.0) {
            violation = std::abs(g(j) + lambda);
        } else {
            violation = std::max(0.0, std::abs(g(j)) - lambda);
        }
        worst = std::max(worst, violation);
    }
    return worst;
}

Eigen::VectorXd lasso_fit(const trex::RegressionProblem& problem, double lambda,
                          const LassoSettings& settings,
                          const Eigen::VectorXd* warm) {
    check_lambda(lambda);
    const Eigen::Index p = problem.p();
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    if (warm != nullptr) {
        if (warm->size() != p || !warm->allFinite()) {
            throw std::invalid_argument("warm start must be finite and of length p");
        }
        beta = *warm;
    }

    Eigen::VectorXd residual = problem.Y - problem.X * beta;
    Eigen::VectorXd col_sq(p);
    for (Eigen::Index j = 0; j < p; ++j) col_sq(j) = problem.X.col(j).squaredNorm();

    for (int sweep = 0; sweep < settings.max_sweeps; ++sweep) {
        double max_move = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            const double old = beta(j);
            const double rho = problem.X.col(j).dot(residual) + col_sq(j) * old;
            const double updated = soft(rho, lambda) / col_sq(j);
            if (updated != old) {
                residual -= (updated - old) * problem.X.col(j);
                beta(j) = updated;
                max_move = std::max(max_move, std::abs(updated - old));
            }
        }
        if (max_move <= settings.tolerance) break;
    }
    return beta;
}

std::vector<double> default_lambda_grid(const trex::RegressionProblem& problem,
                                        int count, double ratio) {
    if (count < 1) throw std::invalid_argument("grid needs at least one point");
    if (!(ratio > 0.0) || ratio >= 1.0) {
        throw std::invalid_argument("grid ratio must lie in (0, 1)");
    }
    const double lambda_max =
        (problem.X.transpose() * problem.Y).lpNorm<Eigen::Infinity>();
    if (!(lambda_max > 0.0)) {
        throw std::invalid_argument(
            "response is uncorrelated with every feature; no positive penalty range");
    }
    std::vector<double> grid(static_cast<std::size_t>(count));
    if (count == 1) {
        grid[0] = lambda_max;
        return grid;
    }
    for (int k = 0; k < count; ++k) {
        grid[static_cast<std::size_t>(k)] =
            lambda_max * std::pow(ratio, static_cast<double>(k) / (count - 1));
    }
    return grid;
}

LassoPath lasso_path(const trex::RegressionProblem& problem,
                     const std::vector<double>& lambda_grid,
                     const LassoSettings& settings) {
    check_grid(lambda_grid);
    const Eigen::Index p = problem.p();
    const auto grid_size = static_cast<Eigen::Index>(lambda_grid.size());

    LassoPath path;
    path.lambda_grid = lambda_grid;
    path.coefficients.resize(p, grid_size);
    path.entry_values = Eigen::VectorXd::Zero(p);
    path.kkt_residuals.resize(lambda_grid.size());

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    for (Eigen::Index k = 0; k < grid_size; ++k) {
        const double lambda = lambda_grid[static_cast<std::size_t>(k)];
        beta = lasso_fit(problem, lambda, settings, &beta);
        path.coefficients.col(k) = beta;
        path.kkt_residuals[static_cast<std::size_t>(k)] =
            kkt_residual(problem, beta, lambda);

        const Eigen::VectorXd g =
            problem.X.transpose() * (problem.Y - problem.X * beta);
        for (Eigen::Index j = 0; j < p; ++j) {
            if (path.entry_values(j) != 0.0) continue;  // already entered higher up
            const bool active = beta(j) != 0.0 ||
                                std::abs(g(j)) >= lambda * (1.0 - 1e-9);
            if (active) path.entry_values(j) = lambda;
        }
    }
    return path;
}

}  // namespace trexkit::lasso
