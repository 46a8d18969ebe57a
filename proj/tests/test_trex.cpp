#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "trexkit/errors.hpp"
#include "trexkit/io/csv.hpp"
#include "trexkit/trex/ctrex.hpp"
#include "trexkit/trex/json.hpp"
#include "trexkit/trex/objective.hpp"
#include "trexkit/trex/path.hpp"
#include "trexkit/trex/subproblem.hpp"
#include "trexkit/trex/topology.hpp"
#include "trexkit/util/rng.hpp"

using trexkit::trex::RegressionProblem;
using trexkit::trex::TrexParams;
using trexkit::trex::TrexSolution;

namespace {

// Single-feature instance with closed-form optima: x = (1,0)', Y = (2,1)'.
// For v = +phi*x the stationary point is beta = 2 - 1/sqrt(1-phi) while that
// stays positive; at phi = 1/2 the optimum is beta = 2-sqrt(2) with value
// 2+2*sqrt(2). For v = -phi*x the half-space forces beta >= 2 and calculus
// on (g + 1/g)/phi + 2 + g, g = beta-2, gives g = 1/sqrt(1+phi); at
// phi = 1/2 the value is 2+2*sqrt(6).
RegressionProblem single_feature_instance() {
    Eigen::MatrixXd x(2, 1);
    x << 1.0, 0.0;
    Eigen::VectorXd y(2);
    y << 2.0, 1.0;
    return trexkit::trex::make_regression_problem(x, y);
}

RegressionProblem random_instance(trexkit::Rng& rng, Eigen::Index n,
                                  Eigen::Index p,
                                  const Eigen::VectorXd& beta_star,
                                  double noise) {
    Eigen::MatrixXd x(n, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        x.col(j) = rng.normal_vector(n);
        x.col(j) /= x.col(j).norm();
    }
    Eigen::VectorXd y = x * beta_star + noise * rng.normal_vector(n);
    return trexkit::trex::make_regression_problem(std::move(x), std::move(y));
}

// Canonical objective evaluated from precomputed inner products, written
// independently of trex_objective to act as an oracle for p = 2 grids.
struct GridObjective {
    double yy, x1y, x2y, x11, x12, x22;
    double phi;
    double at(double b1, double b2) const {
        const double rss = yy - 2 * b1 * x1y - 2 * b2 * x2y + b1 * b1 * x11 +
                           2 * b1 * b2 * x12 + b2 * b2 * x22;
        const double c1 = x1y - b1 * x11 - b2 * x12;
        const double c2 = x2y - b1 * x12 - b2 * x22;
        const double denom = phi * std::max(std::abs(c1), std::abs(c2));
        return rss / denom + std::abs(b1) + std::abs(b2);
    }
};

double grid_minimum(const RegressionProblem& problem, double phi, double lo,
                    double hi, double step) {
    GridObjective g{problem.Y.squaredNorm(),
                    problem.X.col(0).dot(problem.Y),
                    problem.X.col(1).dot(problem.Y),
                    problem.X.col(0).squaredNorm(),
                    problem.X.col(0).dot(problem.X.col(1)),
                    problem.X.col(1).squaredNorm(),
                    phi};
    double best = std::numeric_limits<double>::infinity();
    const int count = static_cast<int>(std::lround((hi - lo) / step));
    for (int i = 0; i <= count; ++i) {
        const double b1 = lo + i * step;
        for (int k = 0; k <= count; ++k) {
            best = std::min(best, g.at(b1, lo + k * step));
        }
    }
    return best;
}

}  // namespace

TEST_CASE("problem construction validates its input") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Identity(3, 2);
    Eigen::VectorXd y = Eigen::VectorXd::Ones(3);
    const RegressionProblem ok = trexkit::trex::make_regression_problem(x, y);
    CHECK(ok.n() == 3);
    CHECK(ok.p() == 2);
    CHECK(ok.column_norms(0) == doctest::Approx(1.0));
    CHECK_FALSE(ok.standardized);

    CHECK_THROWS_AS(trexkit::trex::make_regression_problem(
                        x, Eigen::VectorXd::Ones(2)),
                    std::invalid_argument);
    Eigen::MatrixXd with_zero_col = x;
    with_zero_col.col(1).setZero();
    CHECK_THROWS_AS(trexkit::trex::make_regression_problem(with_zero_col, y),
                    std::invalid_argument);
    Eigen::MatrixXd with_nan = x;
    with_nan(0, 0) = std::nan("");
    CHECK_THROWS_AS(trexkit::trex::make_regression_problem(with_nan, y),
                    std::invalid_argument);
}

TEST_CASE("column normalization is explicit and recorded") {
    Eigen::MatrixXd x(2, 2);
    x << 3.0, 0.0, 4.0, 2.0;
    Eigen::VectorXd y(2);
    y << 1.0, 1.0;
    const RegressionProblem raw = trexkit::trex::make_regression_problem(x, y);
    CHECK(raw.column_norms(0) == doctest::Approx(5.0));
    const RegressionProblem scaled = trexkit::trex::normalize_columns(raw);
    CHECK(scaled.standardized);
    CHECK(scaled.X.col(0).norm() == doctest::Approx(1.0));
    CHECK(scaled.X.col(1).norm() == doctest::Approx(1.0));
    CHECK(scaled.column_norms(0) == doctest::Approx(5.0));  // pre-scaling record
}

TEST_CASE("objective values at hand-checked points") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Identity(2, 2);
    Eigen::VectorXd y(2);
    y << 2.0, 0.0;
    const RegressionProblem problem = trexkit::trex::make_regression_problem(x, y);

    CHECK(trexkit::trex::trex_objective(problem, Eigen::VectorXd::Zero(2), 0.5) ==
          doctest::Approx(4.0));

    Eigen::VectorXd exact_fit(2);
    exact_fit << 2.0, 0.0;
    CHECK(trexkit::trex::trex_objective(problem, exact_fit, 0.5) ==
          doctest::Approx(2.0));

    // At the origin the value is ||Y||^2 / (phi ||X'Y||_inf) = 4 / (0.25 * 2).
    CHECK(trexkit::trex::trex_objective(problem, Eigen::VectorXd::Zero(2), 0.25) ==
          doctest::Approx(8.0));

    SUBCASE("degenerate geometry is surfaced") {
        Eigen::MatrixXd xd(2, 1);
        xd << 1.0, 0.0;
        Eigen::VectorXd yd(2);
        yd << 0.0, 1.0;
        const RegressionProblem degen =
            trexkit::trex::make_regression_problem(xd, yd);
        CHECK_THROWS_AS(
            trexkit::trex::trex_objective(degen, Eigen::VectorXd::Zero(1), 0.5),
            trexkit::SolverError);
    }
}

TEST_CASE("objective scaling relation against the unnormalized form") {
    trexkit::Rng rng(7);
    Eigen::VectorXd beta_star = Eigen::VectorXd::Zero(4);
    beta_star(0) = 1.0;
    const RegressionProblem problem = random_instance(rng, 12, 4, beta_star, 0.3);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::VectorXd beta = rng.normal_vector(4);
        for (const double phi : {0.25, 0.5, 1.0}) {
            const Eigen::VectorXd r = problem.Y - problem.X * beta;
            const double unnormalized =
                r.squaredNorm() / (problem.X.transpose() * r).lpNorm<Eigen::Infinity>() +
                phi * beta.lpNorm<1>();
            CHECK(trexkit::trex::trex_objective(problem, beta, phi) ==
                  doctest::Approx(unnormalized / phi).epsilon(1e-12));
        }
    }
}

TEST_CASE("subproblem assembly has the documented shape") {
    trexkit::Rng rng(11);
    Eigen::VectorXd beta_star = Eigen::VectorXd::Zero(4);
    const RegressionProblem problem = random_instance(rng, 10, 4, beta_star, 1.0);
    const auto cp = trexkit::trex::assemble_subproblem(problem, 0.5, 2, +1);
    CHECK(cp.c.size() == 9);
    CHECK(cp.b.size() == 20);
    CHECK(cp.cones.zero_dim == 0);
    CHECK(cp.cones.nonneg_dim == 0);
    REQUIRE(cp.cones.soc_dims.size() == 5);
    CHECK(cp.cones.soc_dims[0] == 12);
    CHECK(cp.cones.soc_dims[1] == 2);
    CHECK(trexkit::conic::validate(cp).ok());

    SUBCASE("sign flip negates exactly the v-dependent entries") {
        const auto plus = Eigen::MatrixXd(
            trexkit::trex::assemble_subproblem(problem, 0.5, 2, +1).A);
        const auto minus = Eigen::MatrixXd(
            trexkit::trex::assemble_subproblem(problem, 0.5, 2, -1).A);
        const Eigen::Index n = problem.n();
        CHECK((plus.row(0) + minus.row(0)).tail(8).isZero(0.0));
        CHECK(plus.row(0)(0) == minus.row(0)(0));  // t_0 column untouched
        CHECK((plus.row(n + 1) + minus.row(n + 1)).tail(8).isZero(0.0));
        CHECK(plus.middleRows(1, n) == minus.middleRows(1, n));
        CHECK(plus.bottomRows(8) == minus.bottomRows(8));
    }
    SUBCASE("bad indices and parameters are rejected") {
        CHECK_THROWS_AS(trexkit::trex::assemble_subproblem(problem, 0.5, 4, +1),
                        std::invalid_argument);
        CHECK_THROWS_AS(trexkit::trex::assemble_subproblem(problem, 0.5, 0, 2),
                        std::invalid_argument);
        CHECK_THROWS_AS(trexkit::trex::assemble_subproblem(problem, 0.0, 0, +1),
                        std::invalid_argument);
    }
}

TEST_CASE("single-feature subproblems match closed forms") {
    const RegressionProblem problem = single_feature_instance();
    const auto plus = trexkit::trex::solve_subproblem(problem, 0.5, 0, +1);
    REQUIRE(plus.status == trexkit::conic::Status::optimal);
    CHECK(plus.feature == 1);
    CHECK(plus.sign == +1);
    CHECK(plus.beta(0) == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-6));
    CHECK(plus.value == doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-6));

    const auto minus = trexkit::trex::solve_subproblem(problem, 0.5, 0, -1);
    REQUIRE(minus.status == trexkit::conic::Status::optimal);
    CHECK(minus.beta(0) ==
          doctest::Approx(2.0 + std::sqrt(6.0) / 3.0).epsilon(1e-6));
    CHECK(minus.value == doctest::Approx(2.0 + 2.0 * std::sqrt(6.0)).epsilon(1e-6));

    SUBCASE("half-space feasibility and value consistency") {
        for (const auto* sub : {&plus, &minus}) {
            const Eigen::VectorXd r = problem.Y - problem.X * sub->beta;
            const double margin =
                sub->sign * 0.5 * problem.X.col(0).dot(r);
            CHECK(margin >= -1e-7);
            const double integrand =
                r.squaredNorm() / margin + sub->beta.lpNorm<1>();
            CHECK(integrand == doctest::Approx(sub->value).epsilon(1e-6));
        }
    }
}

TEST_CASE("global minimization of the single-feature instance") {
    const RegressionProblem problem = single_feature_instance();
    TrexParams params;
    const TrexSolution sol = trexkit::trex::ctrex(problem, params);
    CHECK(sol.value == doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-6));
    CHECK(sol.beta_hat(0) == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-6));
    CHECK(sol.winner_feature == 1);
    CHECK(sol.winner_sign == +1);
    REQUIRE(sol.all_values.size() == 2);
    CHECK(sol.all_values[0].sign == -1);  // lexicographic order of reports
    CHECK(sol.all_values[1].sign == +1);

    // The certified value never exceeds the objective at arbitrary points.
    trexkit::Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::VectorXd beta = 2.0 * rng.normal_vector(1);
        CHECK(sol.value <=
              trexkit::trex::trex_objective(problem, beta, 0.5) + 1e-9);
    }
}

TEST_CASE("two-feature instances agree with a dense grid oracle") {
    trexkit::Rng rng(2024);
    TrexParams params;
    for (int instance = 0; instance < 5; ++instance) {
        Eigen::VectorXd beta_star(2);
        beta_star << 1.0, -0.5;
        const RegressionProblem problem =
            random_instance(rng, 20, 2, beta_star, 0.5);
        const TrexSolution sol = trexkit::trex::ctrex(problem, params);
        const double oracle = grid_minimum(problem, params.phi, -3.0, 3.0, 0.005);
        CAPTURE(instance);
        CHECK(sol.value <= oracle + 1e-6);
        CHECK(sol.value >= oracle - 0.01);
    }
}

TEST_CASE("pointwise decomposition into half-space integrands") {
    trexkit::Rng rng(5);
    Eigen::VectorXd beta_star = Eigen::VectorXd::Zero(3);
    beta_star(0) = 1.0;
    const RegressionProblem problem = random_instance(rng, 15, 3, beta_star, 0.4);
    const double phi = 0.5;
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::VectorXd beta = rng.normal_vector(3);
        const Eigen::VectorXd r = problem.Y - problem.X * beta;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < 3; ++j) {
            for (const int sign : {-1, +1}) {
                const double margin = sign * phi * problem.X.col(j).dot(r);
                if (margin <= 0.0) continue;
                best = std::min(best, r.squaredNorm() / margin + beta.lpNorm<1>());
            }
        }
        CHECK(trexkit::trex::trex_objective(problem, beta, phi) ==
              doctest::Approx(best).epsilon(1e-10));
    }
}

TEST_CASE("winner selection is independent of the parallelism degree") {
    trexkit::Rng rng(9);
    Eigen::VectorXd beta_star = Eigen::VectorXd::Zero(6);
    beta_star.head(2).setConstant(1.0);
    const RegressionProblem problem = random_instance(rng, 18, 6, beta_star, 0.2);
    TrexParams params;
    const TrexSolution serial = trexkit::trex::ctrex(problem, params, 1);
    const TrexSolution wide = trexkit::trex::ctrex(problem, params, 5);
    CHECK(serial.winner_feature == wide.winner_feature);
    CHECK(serial.winner_sign == wide.winner_sign);
    CHECK(serial.value == wide.value);
    CHECK((serial.beta_hat.array() == wide.beta_hat.array()).all());
    for (std::size_t k = 0; k < serial.all_values.size(); ++k) {
        CHECK(serial.all_values[k].value == wide.all_values[k].value);
    }
}

TEST_CASE("phi path entries follow the closed-form activation boundary") {
    const RegressionProblem problem = single_feature_instance();
    TrexParams params;

    // The optimum is 2 - 1/sqrt(1-phi), positive exactly when phi < 3/4.
    const trexkit::trex::TrexPath path =
        trexkit::trex::ctrex_path(problem, {0.9, 0.7, 0.5}, params);
    REQUIRE(path.points.size() == 3);
    CHECK(std::abs(path.points[0].solution.beta_hat(0)) <= 1e-7);
    CHECK(path.points[1].solution.beta_hat(0) ==
          doctest::Approx(2.0 - 1.0 / std::sqrt(0.3)).epsilon(1e-5));
    CHECK(path.points[2].solution.beta_hat(0) ==
          doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-6));
    CHECK(path.entry_values(0) == doctest::Approx(0.7));

    const trexkit::trex::TrexPath inactive =
        trexkit::trex::ctrex_path(problem, {2.0, 1.5}, params);
    CHECK(inactive.entry_values(0) == 0.0);

    SUBCASE("grid validation") {
        CHECK_THROWS_AS(trexkit::trex::ctrex_path(problem, {0.5, 0.7}, params),
                        std::invalid_argument);
        CHECK_THROWS_AS(trexkit::trex::ctrex_path(problem, {0.5, 0.0}, params),
                        std::invalid_argument);
        CHECK_THROWS_AS(trexkit::trex::ctrex_path(problem, {}, params),
                        std::invalid_argument);
    }
}

TEST_CASE("warm starts along the path do not cost extra iterations") {
    trexkit::Rng rng(21);
    Eigen::VectorXd beta_star = Eigen::VectorXd::Zero(5);
    beta_star.head(2).setConstant(1.0);
    const RegressionProblem problem = random_instance(rng, 20, 5, beta_star, 0.3);
    TrexParams params;
    const std::vector<double> grid{1.0, 0.8, 0.65, 0.5};
    const auto warm = trexkit::trex::ctrex_path(problem, grid, params, 1, true);
    const auto cold = trexkit::trex::ctrex_path(problem, grid, params, 1, false);
    CHECK(warm.total_iterations <= cold.total_iterations);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(warm.points[k].solution.value ==
              doctest::Approx(cold.points[k].solution.value).epsilon(1e-6));
    }
}

TEST_CASE("landscape report of the single-feature instance") {
    const RegressionProblem problem = single_feature_instance();
    const TrexSolution sol = trexkit::trex::ctrex(problem, TrexParams{});
    const auto report = trexkit::trex::topology_report(sol, 4);
    REQUIRE(report.sorted_values.size() == 2);
    CHECK(report.sorted_values[0] ==
          doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-6));
    CHECK(report.sorted_values[1] ==
          doctest::Approx(2.0 + 2.0 * std::sqrt(6.0)).epsilon(1e-6));
    CHECK(report.sorted_values.front() == doctest::Approx(sol.value));
    CHECK(report.per_feature_value(0) == doctest::Approx(sol.value));
    CHECK(report.importance(0) ==
          doctest::Approx(1.0 / (2.0 + 2.0 * std::sqrt(2.0))).epsilon(1e-6));
    REQUIRE(report.importance_order.size() == 1);
    CHECK(report.importance_order[0] == 1);
    CHECK(report.failed.empty());
    int total = 0;
    for (const int c : report.histogram_counts) total += c;
    CHECK(total == 2);

    SUBCASE("importance ranks the winner first on a wider instance") {
        trexkit::Rng rng(13);
        Eigen::VectorXd beta_star = Eigen::VectorXd::Zero(4);
        beta_star(2) = 2.0;
        const RegressionProblem wide = random_instance(rng, 25, 4, beta_star, 0.1);
        const TrexSolution wsol = trexkit::trex::ctrex(wide, TrexParams{});
        const auto wreport = trexkit::trex::topology_report(wsol);
        CHECK(wreport.importance_order.front() == wsol.winner_feature);
    }
}

TEST_CASE("solution serialization carries every subproblem value") {
    const RegressionProblem problem = single_feature_instance();
    const TrexSolution sol = trexkit::trex::ctrex(problem, TrexParams{});
    const nlohmann::json j = trexkit::trex::solution_to_json(sol, 0.5);
    CHECK(j.at("phi").get<double>() == 0.5);
    CHECK(j.at("winner").at("feature").get<int>() == 1);
    CHECK(j.at("winner").at("sign").get<int>() == 1);
    REQUIRE(j.at("subproblems").size() == 2);
    CHECK(j.at("subproblems")[0].at("status").get<std::string>() == "optimal");
}

TEST_CASE("CSV ingestion round trip") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "trexkit_csv_test";
    fs::create_directories(dir);
    const std::string x_path = (dir / "x.csv").string();
    const std::string y_path = (dir / "y.csv").string();

    Eigen::MatrixXd x(3, 2);
    x << 1.0, 0.5, -0.25, 2.0, 0.125, -1.0;
    Eigen::VectorXd y(3);
    y << 0.5, 1.5, -2.0;
    trexkit::io::write_matrix_csv(x_path, x, {"a", "b"});
    trexkit::io::write_vector_csv(y_path, y, "response");

    const RegressionProblem problem =
        trexkit::trex::load_regression_csv(x_path, y_path);
    CHECK(problem.X == x);
    CHECK(problem.Y == y);

    CHECK_THROWS_AS(
        trexkit::trex::load_regression_csv((dir / "missing.csv").string(), y_path),
        trexkit::IoError);
    fs::remove_all(dir);
}
