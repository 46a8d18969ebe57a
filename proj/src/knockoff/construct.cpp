#include "trexkit/knockoff/construct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "trexkit/errors.hpp"
#include "trexkit/util/rng.hpp"

namespace trexkit::knockoff {

KnockoffModel make_knockoffs(const trex::RegressionProblem& problem,
                             std::uint64_t seed) {
    const Eigen::Index n = problem.n();
    const Eigen::Index p = problem.p();
    if (n <= p) {
        throw std::invalid_argument(
            "knockoff construction needs more observations than features");
    }

    KnockoffModel model;
    model.original_rows = n;
    model.X = problem.X;
    for (Eigen::Index j = 0; j < p; ++j) model.X.col(j) /= model.X.col(j).norm();
    model.Y = problem.Y;

    if (n < 2 * p) {
        // Too few rows for an orthogonal complement of dimension p: pad the
        // design with zero rows and extend the response at the estimated
        // noise level sigma^2 = ||Y - X b_ls||^2 / (n - p).
        const Eigen::VectorXd b_ls = model.X.colPivHouseholderQr().solve(model.Y);
        const double sigma2 =
            (model.Y - model.X * b_ls).squaredNorm() / static_cast<double>(n - p);
        const Eigen::Index extra = 2 * p - n;

        model.X.conservativeResize(2 * p, Eigen::NoChange);
        model.X.bottomRows(extra).setZero();
        model.Y.conservativeResize(2 * p);
        Rng rng = Rng::derive(seed, 17);  // fixed substream, clear of callers
        const double sigma = std::sqrt(sigma2);
        for (Eigen::Index i = 0; i < extra; ++i) {
            model.Y(n + i) = sigma * rng.normal();
        }
        model.augmented = true;
    }

    const Eigen::MatrixXd sigma = model.X.transpose() * model.X;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
    if (eig.info() != Eigen::Success) {
        throw SolverError("correlation matrix eigendecomposition failed");
    }
    const Eigen::VectorXd lambda = eig.eigenvalues();
    if (lambda.minCoeff() <= 1e-12) {
        throw SolverError(
            "design is rank deficient; knockoff construction needs a "
            "nonsingular correlation matrix");
    }
    model.s = std::min(2.0 * lambda.minCoeff(), 1.0);

    // C'C = 2s I - s^2 Sigma^{-1} shares Sigma's eigenvectors, so its factor
    // comes straight from the spectrum: mu_i = 2s - s^2 / lambda_i >= 0 by
    // the choice of s; clamp the roundoff negatives.
    Eigen::VectorXd mu(p);
    for (Eigen::Index i = 0; i < p; ++i) {
        const double value = 2.0 * model.s - model.s * model.s / lambda(i);
        if (value < -1e-10) {
            throw SolverError("knockoff factor lost positive semidefiniteness");
        }
        mu(i) = std::sqrt(std::max(value, 0.0));
    }
    const Eigen::MatrixXd c_factor =
        mu.asDiagonal() * eig.eigenvectors().transpose();

    // Orthonormal complement of col(X): columns p..2p-1 of the full Q factor.
    const Eigen::Index m = model.X.rows();
    const Eigen::MatrixXd q_full =
        Eigen::HouseholderQR<Eigen::MatrixXd>(model.X).householderQ() *
        Eigen::MatrixXd::Identity(m, m);
    const Eigen::MatrixXd u_perp = q_full.middleCols(p, p);

    const Eigen::MatrixXd sigma_inv_s =
        eig.eigenvectors() *
        (model.s * lambda.cwiseInverse()).asDiagonal() *
        eig.eigenvectors().transpose();
    model.X_tilde =
        model.X * (Eigen::MatrixXd::Identity(p, p) - sigma_inv_s) +
        u_perp * c_factor;
    return model;
}

double gram_identity_error(const KnockoffModel& model) {
    const Eigen::Index p = model.X.cols();
    const Eigen::MatrixXd sigma = model.X.transpose() * model.X;
    const double copy_error =
        (model.X_tilde.transpose() * model.X_tilde - sigma)
            .cwiseAbs()
            .maxCoeff();
    const double cross_error =
        (model.X.transpose() * model.X_tilde -
         (sigma - model.s * Eigen::MatrixXd::Identity(p, p)))
            .cwiseAbs()
            .maxCoeff();
    return std::max(copy_error, cross_error);
}

Eigen::MatrixXd augmented_design(const KnockoffModel& model) {
    Eigen::MatrixXd combined(model.X.rows(), 2 * model.X.cols());
    combined << model.X, model.X_tilde;
    return combined;
}

}  // namespace trexkit::knockoff
