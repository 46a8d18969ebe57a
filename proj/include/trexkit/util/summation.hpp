#pragma once

#include <algorithm>
#include <vector>

#include <Eigen/Core>

namespace trexkit {

// Sums after sorting by value. Reductions done this way are invariant under
// permutations of the input, which keeps coordinate-symmetric algorithms
// (q-TREX on swapped knockoff columns) reproducible to the last bit.
inline double sum_sorted(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    double acc = 0.0;
    for (const double v : values) acc += v;
    return acc;
}

inline double l1_norm_stable(const Eigen::VectorXd& v) {
    std::vector<double> mags(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) mags[static_cast<std::size_t>(i)] = std::abs(v[i]);
    return sum_sorted(std::move(mags));
}

inline double squared_norm_stable(const Eigen::VectorXd& v) {
    std::vector<double> sq(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) sq[static_cast<std::size_t>(i)] = v[i] * v[i];
    return sum_sorted(std::move(sq));
}

inline double dot_stable(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    std::vector<double> prods(static_cast<std::size_t>(a.size()));
    for (Eigen::Index i = 0; i < a.size(); ++i) prods[static_cast<std::size_t>(i)] = a[i] * b[i];
    return sum_sorted(std::move(prods));
}

}  // namespace trexkit
