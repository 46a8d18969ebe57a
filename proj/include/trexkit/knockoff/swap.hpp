#pragma once

#include <vector>

#include <Eigen/Core>

#include "trexkit/knockoff/construct.hpp"

namespace trexkit::knockoff {

// [X X_tilde] with columns j and j+p exchanged for every j in swap_set
// (1-based). Exchangeability says this matrix has the same Gram matrix as
// the unswapped one.
Eigen::MatrixXd swap_columns(const KnockoffModel& model,
                             const std::vector<int>& swap_set);

// The orthogonal map R with R [X X_tilde] = [X X_tilde]_swapped, recovered as
// the Procrustes solution U V' of the cross matrix G_swapped G'. Throws when
// the model's Gram identities are too damaged for the map to exist.
Eigen::MatrixXd swap_rotation(const KnockoffModel& model,
                              const std::vector<int>& swap_set);

}  // namespace trexkit::knockoff
