#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace trexkit::io {

// Convention (documented in the README): comma-separated, decimal point,
// UTF-8, rows are observations and columns are features. A single leading
// header row is detected by its first field failing to parse as a number.

Eigen::MatrixXd read_matrix_csv(const std::string& path);
Eigen::VectorXd read_vector_csv(const std::string& path);

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& header = {});
void write_vector_csv(const std::string& path, const Eigen::VectorXd& v,
                      const std::string& header = "");

}  // namespace trexkit::io
