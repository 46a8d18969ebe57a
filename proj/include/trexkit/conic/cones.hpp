#pragma once

#include <vector>

#include <Eigen/Core>

namespace trexkit::conic {

// Cone product K = {0}^zero_dim x R+^nonneg_dim x SOC(q_1) x ... x SOC(q_k),
// in this row order. The order of soc_dims is significant and fixed at
// construction. A SOC of size 1 is the nonnegative cone.
struct ConeSpec {
    Eigen::Index zero_dim = 0;
    Eigen::Index nonneg_dim = 0;
    std::vector<Eigen::Index> soc_dims;

    Eigen::Index total_rows() const {
        Eigen::Index total = zero_dim + nonneg_dim;
        for (const auto d : soc_dims) total += d;
        return total;
    }
};

// In-place Euclidean projection of a slack vector onto K.
void project_onto_cone(const ConeSpec& cones, Eigen::Ref<Eigen::VectorXd> s);

// In-place projection onto the dual cone K* (zero rows become free).
void project_onto_dual_cone(const ConeSpec& cones, Eigen::Ref<Eigen::VectorXd> y);

// Max-norm change under projection onto K; zero iff s lies in K.
double cone_membership_error(const ConeSpec& cones, const Eigen::VectorXd& s);

// Same for K*.
double dual_cone_membership_error(const ConeSpec& cones, const Eigen::VectorXd& y);

}  // namespace trexkit::conic
