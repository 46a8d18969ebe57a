#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "trexkit/trex/problem.hpp"

namespace trexkit::knockoff {

// Equi-correlated knockoff copy of a design. X carries unit-norm columns and,
// when the input had fewer than 2p rows, 2p - n appended zero rows; Y is then
// extended with draws from the estimated noise level so the tests downstream
// keep their calibration.
struct KnockoffModel {
    Eigen::MatrixXd X;        // m x p, unit-norm columns, m = max(n, 2p)
    Eigen::MatrixXd X_tilde;  // m x p knockoff copies
    Eigen::VectorXd Y;        // length m
    Eigen::Index original_rows = 0;
    bool augmented = false;
    double s = 0.0;  // equi-correlation level min(2 lambda_min(X'X), 1)
};

// Builds the copies via X (I - s Sigma^{-1}) + U C with U an orthonormal basis
// of a complement of the column space (Householder QR, deterministic) and
// C'C = 2s I - s^2 Sigma^{-1}. Requires n > p and a nonsingular correlation
// matrix; the seed only feeds the response extension when rows are added.
KnockoffModel make_knockoffs(const trex::RegressionProblem& problem,
                             std::uint64_t seed = 0);

// Largest entry-wise violation of the two exchangeability identities
// X~'X~ = Sigma and X'X~ = Sigma - s I.
double gram_identity_error(const KnockoffModel& model);

// [X X_tilde], the 2p-column design every statistic runs on.
Eigen::MatrixXd augmented_design(const KnockoffModel& model);

}  // namespace trexkit::knockoff
