#include "trexkit/knockoff/stats.hpp"

#include <cmath>
#include <stdexcept>

#include "trexkit/errors.hpp"
#include "trexkit/lasso/lasso.hpp"
#include "trexkit/trex/path.hpp"
#include "trexkit/trex/topology.hpp"

namespace trexkit::knockoff {

namespace {

trex::RegressionProblem combined_problem(const KnockoffModel& model) {
    return trex::make_regression_problem(augmented_design(model), model.Y);
}

std::vector<double> default_phi_grid() {
    std::vector<double> grid;
    for (int k = 30; k >= 2; --k) grid.push_back(0.05 * k);  // 1.50 .. 0.10
    return grid;
}

}  // namespace

Eigen::VectorXd signed_max_pairs(const Eigen::VectorXd& Z) {
    if (Z.size() % 2 != 0) {
        throw std::invalid_argument("importance vector must pair originals with copies");
    }
    const Eigen::Index p = Z.size() / 2;
    Eigen::VectorXd W(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const double original = Z(j);
        const double copy = Z(j + p);
        if (original == copy) {
            W(j) = 0.0;
        } else {
            W(j) = std::max(original, copy) * (original > copy ? 1.0 : -1.0);
        }
    }
    return W;
}

StatResult stat_lasso_signed_max(const KnockoffModel& model, int grid_size,
                                 double grid_ratio) {
    const auto problem = combined_problem(model);
    const auto grid = lasso::default_lambda_grid(problem, grid_size, grid_ratio);
    const auto path = lasso::lasso_path(problem, grid);
    StatResult result;
    result.Z = path.entry_values;
    result.W = signed_max_pairs(result.Z);
    return result;
}

StatResult stat_trex_phi_path(const KnockoffModel& model,
                              const PhiPathSettings& settings) {
    const auto problem = combined_problem(model);
    const std::vector<double> grid =
        settings.phi_grid.empty() ? default_phi_grid() : settings.phi_grid;

    StatResult result;
    result.Z = Eigen::VectorXd::Zero(problem.p());

    if (settings.backend == PathBackend::certified) {
        auto params = settings.certified;
        const auto path =
            trex::ctrex_path(problem, grid, params, settings.parallelism);
        result.Z = path.entry_values;
        result.W = signed_max_pairs(result.Z);
        return result;
    }

    // Smooth backend: one descent per grid point, warm-started downward.
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(problem.p());
    for (const double phi : grid) {
        auto params = settings.smooth;
        params.phi = phi;
        const auto outcome = qtrex::qtrex_solve(problem, params, beta);
        beta = outcome.beta;
        for (Eigen::Index j = 0; j < problem.p(); ++j) {
            if (result.Z(j) == 0.0 &&
                std::abs(beta(j)) > settings.active_threshold) {
                result.Z(j) = phi;
            }
        }
    }
    result.W = signed_max_pairs(result.Z);
    return result;
}

StatResult stat_trex_fvalue(const KnockoffModel& model,
                            const trex::TrexParams& params, int parallelism) {
    const auto problem = combined_problem(model);
    const auto solution = trex::ctrex(problem, params, parallelism);
    const auto topo = trex::topology_report(solution);

    StatResult result;
    result.Z = topo.importance;
    result.W = signed_max_pairs(result.Z);
    return result;
}

StatResult compute_statistic(const KnockoffModel& model, const std::string& name,
                             int parallelism) {
    if (name == "lasso") return stat_lasso_signed_max(model);
    if (name == "phi-path") {
        PhiPathSettings settings;
        settings.parallelism = parallelism;
        return stat_trex_phi_path(model, settings);
    }
    if (name == "f-value") return stat_trex_fvalue(model, {}, parallelism);
    throw ConfigError("unknown statistic '" + name +
                      "' (expected lasso, phi-path, or f-value)");
}

}  // namespace trexkit::knockoff
