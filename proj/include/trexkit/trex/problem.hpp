#pragma once

#include <string>

#include <Eigen/Core>

namespace trexkit::trex {

// Shared input of every algorithm in the toolkit: design matrix X (rows are
// observations, columns are features) and response Y. Columns are never
// normalized implicitly; column_norms records the Euclidean norms seen at
// ingestion and normalize_columns is the explicit rescaling step.
struct RegressionProblem {
    Eigen::MatrixXd X;
    Eigen::VectorXd Y;
    Eigen::VectorXd column_norms;
    bool standardized = false;

    Eigen::Index n() const { return X.rows(); }
    Eigen::Index p() const { return X.cols(); }
};

// Validates (n >= 1, p >= 1, finite entries, matching lengths, no all-zero
// column) and records column norms. Throws std::invalid_argument on defects.
RegressionProblem make_regression_problem(Eigen::MatrixXd X, Eigen::VectorXd Y);

// Reads X and Y from CSV files (optional single header row).
RegressionProblem load_regression_csv(const std::string& x_path,
                                      const std::string& y_path);

// Explicit column rescaling to unit Euclidean norm; sets the standardized
// flag and keeps the pre-scaling norms in column_norms.
RegressionProblem normalize_columns(const RegressionProblem& problem);

}  // namespace trexkit::trex
