#include "trexkit/trex/ctrex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trexkit/errors.hpp"
#include "trexkit/util/parallel.hpp"

namespace trexkit::trex {

TrexSolution ctrex(const RegressionProblem& problem, const TrexParams& params,
                   int parallelism) {
    const Eigen::Index p = problem.p();
    TrexSolution solution;
    solution.all_values.resize(static_cast<std::size_t>(2 * p));

    parallel_for(static_cast<std::size_t>(2 * p),
                 static_cast<unsigned>(std::max(1, parallelism)),
                 [&](std::size_t idx) {
        const auto k = static_cast<Eigen::Index>(idx);
        const Eigen::Index column = k / 2;
        const int sign = (k % 2 == 0) ? -1 : +1;
        solution.all_values[static_cast<std::size_t>(k)] =
            solve_subproblem(problem, params.phi, column, sign, params.solver);
    });

    double best = std::numeric_limits<double>::infinity();
    for (const auto& sub : solution.all_values) {
        if (sub.status == conic::Status::optimal && sub.value < best) {
            best = sub.value;
        }
    }
    if (!std::isfinite(best)) {
        throw SolverError("every subproblem failed; no certified minimum available");
    }
    // all_values is already in lexicographic (feature, sign) order, so the
    // first entry inside the tolerance window is the tie-break winner.
    for (const auto& sub : solution.all_values) {
        if (sub.status != conic::Status::optimal) continue;
        if (sub.value <= best + params.objective_tolerance) {
            solution.beta_hat = sub.beta;
            solution.winner_feature = sub.feature;
            solution.winner_sign = sub.sign;
            break;
        }
    }
    solution.value = best;
    return solution;
}

}  // namespace trexkit::trex
