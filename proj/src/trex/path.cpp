#include "trexkit/trex/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "trexkit/errors.hpp"
#include "trexkit/util/parallel.hpp"

namespace trexkit::trex {

TrexPath ctrex_path(const RegressionProblem& problem,
                    const std::vector<double>& phi_grid,
                    const TrexParams& params, int parallelism,
                    bool warm_starts) {
    if (phi_grid.empty()) {
        throw std::invalid_argument("phi grid must be non-empty");
    }
    for (std::size_t i = 0; i < phi_grid.size(); ++i) {
        if (!(phi_grid[i] > 0.0)) {
            throw std::invalid_argument("phi grid values must be positive");
        }
        if (i > 0 && !(phi_grid[i] < phi_grid[i - 1])) {
            throw std::invalid_argument("phi grid must be strictly decreasing");
        }
    }

    const Eigen::Index p = problem.p();
    const std::size_t num_sub = static_cast<std::size_t>(2 * p);
    std::vector<conic::ConicSolution> carried(num_sub);
    bool have_carried = false;

    TrexPath path;
    path.points.reserve(phi_grid.size());

    for (const double phi : phi_grid) {
        PathPoint point;
        point.phi = phi;
        point.solution.all_values.resize(num_sub);
        auto& subs = point.solution.all_values;

        parallel_for(static_cast<std::size_t>(2 * p),
                     static_cast<unsigned>(std::max(1, parallelism)),
                     [&](std::size_t idx) {
            const auto k = static_cast<Eigen::Index>(idx);
            const Eigen::Index column = k / 2;
            const int sign = (k % 2 == 0) ? -1 : +1;
            std::optional<conic::WarmStart> warm;
            if (warm_starts && have_carried) {
                const auto& prev = carried[static_cast<std::size_t>(k)];
                if (prev.x.size()) {
                    warm = conic::WarmStart{prev.x, prev.y, prev.slack};
                }
            }
            subs[static_cast<std::size_t>(k)] =
                solve_subproblem(problem, phi, column, sign, params.solver, warm);
        });

        double best = std::numeric_limits<double>::infinity();
        for (const auto& sub : subs) {
            path.total_iterations += sub.iterations;
            if (sub.status == conic::Status::optimal && sub.value < best) {
                best = sub.value;
            }
        }
        if (!std::isfinite(best)) {
            throw SolverError("every subproblem failed at phi = " + std::to_string(phi));
        }
        for (const auto& sub : subs) {
            if (sub.status != conic::Status::optimal) continue;
            if (sub.value <= best + params.objective_tolerance) {
                point.solution.beta_hat = sub.beta;
                point.solution.winner_feature = sub.feature;
                point.solution.winner_sign = sub.sign;
                break;
            }
        }
        point.solution.value = best;

        for (std::size_t k = 0; k < num_sub; ++k) {
            carried[k] = subs[k].raw;
        }
        have_carried = true;
        path.points.push_back(std::move(point));
    }

    path.entry_values = Eigen::VectorXd::Zero(p);
    const double active_floor =
        std::max(params.support_threshold, params.support_cleanup);
    for (const auto& point : path.points) {
        for (Eigen::Index j = 0; j < p; ++j) {
            if (std::abs(point.solution.beta_hat(j)) > active_floor) {
                path.entry_values(j) = std::max(path.entry_values(j), point.phi);
            }
        }
    }
    return path;
}

}  // namespace trexkit::trex
