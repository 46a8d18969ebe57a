#include "trexkit/trex/subproblem.hpp"

#include <stdexcept>
#include <vector>

namespace trexkit::trex {

conic::ConicProblem assemble_subproblem(const RegressionProblem& problem,
                                        double phi, Eigen::Index column,
                                        int sign) {
    const Eigen::Index n = problem.n();
    const Eigen::Index p = problem.p();
    if (column < 0 || column >= p) {
        throw std::invalid_argument("feature index out of range");
    }
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("sign must be +1 or -1");
    }
    if (!(phi > 0.0)) {
        throw std::invalid_argument("phi must be positive");
    }
    if (problem.X.col(column).norm() == 0.0) {
        throw std::invalid_argument("feature " + std::to_string(column + 1) +
                                    " is identically zero");
    }

    // Variables x = (t_0, t_1..t_p, beta_1..beta_p); beta_k sits at 1+p+k.
    const Eigen::Index num_vars = 2 * p + 1;
    const Eigen::Index num_rows = (n + 2) + 2 * p;
    const Eigen::VectorXd v_corr =
        sign * phi * (problem.X.transpose() * problem.X.col(column));
    const double v_dot_y = sign * phi * problem.X.col(column).dot(problem.Y);

    conic::ConicProblem cp;
    cp.c = Eigen::VectorXd::Zero(num_vars);
    cp.c.head(p + 1).setOnes();
    cp.b = Eigen::VectorXd::Zero(num_rows);
    cp.cones.soc_dims.assign(1, n + 2);
    cp.cones.soc_dims.insert(cp.cones.soc_dims.end(), p, 2);

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(n * p + 4 * p + 4));

    // Size-(n+2) cone rows: slack = (t_0 + d, 2(Y - X beta), d - t_0) with
    // d = v'(Y - X beta); membership forces both t_0 >= 0 and d >= 0.
    cp.b(0) = v_dot_y;
    trips.emplace_back(0, 0, -1.0);
    for (Eigen::Index k = 0; k < p; ++k) {
        if (v_corr(k) != 0.0) trips.emplace_back(0, 1 + p + k, v_corr(k));
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        cp.b(1 + i) = 2.0 * problem.Y(i);
        for (Eigen::Index k = 0; k < p; ++k) {
            if (problem.X(i, k) != 0.0) {
                trips.emplace_back(1 + i, 1 + p + k, 2.0 * problem.X(i, k));
            }
        }
    }
    cp.b(n + 1) = v_dot_y;
    trips.emplace_back(n + 1, 0, 1.0);
    for (Eigen::Index k = 0; k < p; ++k) {
        if (v_corr(k) != 0.0) trips.emplace_back(n + 1, 1 + p + k, v_corr(k));
    }

    // Size-2 cones: slack = (t_k, beta_k), i.e. |beta_k| <= t_k.
    for (Eigen::Index k = 0; k < p; ++k) {
        trips.emplace_back(n + 2 + 2 * k, 1 + k, -1.0);
        trips.emplace_back(n + 3 + 2 * k, 1 + p + k, -1.0);
    }

    cp.A.resize(num_rows, num_vars);
    cp.A.setFromTriplets(trips.begin(), trips.end());
    return cp;
}

SubproblemResult solve_subproblem(const RegressionProblem& problem, double phi,
                                  Eigen::Index column, int sign,
                                  const conic::SolverSettings& settings,
                                  const std::optional<conic::WarmStart>& warm) {
    const conic::ConicProblem cp = assemble_subproblem(problem, phi, column, sign);
    conic::ConicSolution sol = conic::solve(cp, settings, warm);
    SubproblemResult result;
    result.feature = column + 1;
    result.sign = sign;
    result.status = sol.status;
    result.iterations = sol.iterations;
    result.beta = sol.x.size() ? sol.x.tail(problem.p()).eval()
                               : Eigen::VectorXd::Zero(problem.p());
    result.value = cp.c.dot(sol.x);
    result.raw = std::move(sol);
    return result;
}

}  // namespace trexkit::trex
