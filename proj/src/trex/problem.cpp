#include "trexkit/trex/problem.hpp"

#include <stdexcept>
#include <string>

#include "trexkit/io/csv.hpp"

namespace trexkit::trex {

RegressionProblem make_regression_problem(Eigen::MatrixXd X, Eigen::VectorXd Y) {
    if (X.rows() < 1 || X.cols() < 1) {
        throw std::invalid_argument("design matrix must have at least one row and one column");
    }
    if (Y.size() != X.rows()) {
        throw std::invalid_argument(
            "response has " + std::to_string(Y.size()) + " entries but the design has " +
            std::to_string(X.rows()) + " rows");
    }
    if (!X.allFinite() || !Y.allFinite()) {
        throw std::invalid_argument("design or response contains non-finite entries");
    }
    RegressionProblem problem;
    problem.column_norms = X.colwise().norm();
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        if (problem.column_norms(j) == 0.0) {
            throw std::invalid_argument("feature " + std::to_string(j + 1) +
                                        " is identically zero");
        }
    }
    problem.X = std::move(X);
    problem.Y = std::move(Y);
    return problem;
}

RegressionProblem load_regression_csv(const std::string& x_path,
                                      const std::string& y_path) {
    return make_regression_problem(io::read_matrix_csv(x_path),
                                   io::read_vector_csv(y_path));
}

RegressionProblem normalize_columns(const RegressionProblem& problem) {
    RegressionProblem scaled = problem;
    for (Eigen::Index j = 0; j < scaled.p(); ++j) {
        scaled.X.col(j) /= problem.column_norms(j);
    }
    scaled.standardized = true;
    return scaled;
}

}  // namespace trexkit::trex
