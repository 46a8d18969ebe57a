#include "trexkit/conic/cones.hpp"

#include <algorithm>
#include <cmath>

namespace trexkit::conic {

namespace {

void project_soc(Eigen::Ref<Eigen::VectorXd> block) {
    const Eigen::Index d = block.size();
    if (d == 1) {  // SOC(1) degenerates to the nonnegative ray
        block(0) = std::max(block(0), 0.0);
        return;
    }
    const double r = block(0);
    const double wnorm = block.tail(d - 1).norm();
    if (wnorm <= r) return;           // inside
    if (wnorm <= -r) {                // polar: project to origin
        block.setZero();
        return;
    }
    const double scale = 0.5 * (1.0 + r / wnorm);
    block(0) = scale * wnorm;
    block.tail(d - 1) *= scale;
}

template <bool Dual>
void project_impl(const ConeSpec& cones, Eigen::Ref<Eigen::VectorXd> v) {
    Eigen::Index at = 0;
    if constexpr (Dual) {
        at += cones.zero_dim;  // dual of {0} is the free cone
    } else {
        v.segment(at, cones.zero_dim).setZero();
        at += cones.zero_dim;
    }
    v.segment(at, cones.nonneg_dim) = v.segment(at, cones.nonneg_dim).cwiseMax(0.0);
    at += cones.nonneg_dim;
    for (const auto d : cones.soc_dims) {
        project_soc(v.segment(at, d));
        at += d;
    }
}

}  // namespace

void project_onto_cone(const ConeSpec& cones, Eigen::Ref<Eigen::VectorXd> s) {
    project_impl<false>(cones, s);
}

void project_onto_dual_cone(const ConeSpec& cones, Eigen::Ref<Eigen::VectorXd> y) {
    project_impl<true>(cones, y);
}

double cone_membership_error(const ConeSpec& cones, const Eigen::VectorXd& s) {
    Eigen::VectorXd projected = s;
    project_onto_cone(cones, projected);
    return (projected - s).lpNorm<Eigen::Infinity>();
}

double dual_cone_membership_error(const ConeSpec& cones, const Eigen::VectorXd& y) {
    Eigen::VectorXd projected = y;
    project_onto_dual_cone(cones, projected);
    return (projected - y).lpNorm<Eigen::Infinity>();
}

}  // namespace trexkit::conic
