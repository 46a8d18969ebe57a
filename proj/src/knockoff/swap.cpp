#include "trexkit/knockoff/swap.hpp"

#include <stdexcept>

#include <Eigen/Dense>

#include "trexkit/errors.hpp"

namespace trexkit::knockoff {

Eigen::MatrixXd swap_columns(const KnockoffModel& model,
                             const std::vector<int>& swap_set) {
    const Eigen::Index p = model.X.cols();
    Eigen::MatrixXd swapped = augmented_design(model);
    for (const int j : swap_set) {
        if (j < 1 || j > static_cast<int>(p)) {
            throw std::invalid_argument("swap index out of range");
        }
        swapped.col(j - 1).swap(swapped.col(j - 1 + p));
    }
    return swapped;
}

Eigen::MatrixXd swap_rotation(const KnockoffModel& model,
                              const std::vector<int>& swap_set) {
    if (gram_identity_error(model) > 1e-6) {
        throw SolverError(
            "exchangeability identities are violated; no orthogonal map exists");
    }
    const Eigen::MatrixXd original = augmented_design(model);
    const Eigen::MatrixXd swapped = swap_columns(model, swap_set);
    const Eigen::MatrixXd cross = swapped * original.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().transpose();
}

}  // namespace trexkit::knockoff
