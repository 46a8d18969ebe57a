#include "trexkit/qtrex/qtrex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "trexkit/errors.hpp"
#include "trexkit/io/csv.hpp"
#include "trexkit/trex/objective.hpp"
#include "trexkit/util/parallel.hpp"
#include "trexkit/util/rng.hpp"

namespace trexkit::qtrex {

namespace {

void check_params(const QtrexParams& params) {
    if (params.q_exponent < 2 || params.q_exponent % 2 != 0) {
        throw std::invalid_argument("q exponent must be even and at least 2");
    }
    if (!(params.phi > 0.0)) throw std::invalid_argument("phi must be positive");
    if (params.n_starts < 1) throw std::invalid_argument("need at least one start");
    if (!(params.nonzero_fraction > 0.0) || params.nonzero_fraction > 1.0) {
        throw std::invalid_argument("nonzero fraction must lie in (0, 1]");
    }
}

// l_q norm with the largest magnitude factored out so that q ~ 40 powers
// stay in range: ||u||_q = M * (sum (|u_i|/M)^q)^(1/q), M = ||u||_inf.
double lq_norm(const Eigen::VectorXd& u, int q, double& scale_out,
               double& power_sum_out) {
    const double scale = u.lpNorm<Eigen::Infinity>();
    scale_out = scale;
    if (scale == 0.0) {
        power_sum_out = 0.0;
        return 0.0;
    }
    double sum = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        sum += std::pow(std::abs(u(i)) / scale, q);
    }
    power_sum_out = sum;
    return scale * std::pow(sum, 1.0 / q);
}

struct SmoothParts {
    double value = 0.0;          // ||r||^2 / (phi ||u||_q)
    Eigen::VectorXd residual;    // r
    Eigen::VectorXd correlation; // u = X'r
    double lq = 0.0;
    bool degenerate = false;
};

SmoothParts smooth_parts(const trex::RegressionProblem& problem,
                         const Eigen::VectorXd& beta, double phi, int q) {
    SmoothParts parts;
    parts.residual = problem.Y - problem.X * beta;
    parts.correlation = problem.X.transpose() * parts.residual;
    double scale = 0.0, power_sum = 0.0;
    parts.lq = lq_norm(parts.correlation, q, scale, power_sum);
    if (parts.lq == 0.0) {
        parts.degenerate = true;
        return parts;
    }
    parts.value = parts.residual.squaredNorm() / (phi * parts.lq);
    return parts;
}

}  // namespace

double smooth_objective(const trex::RegressionProblem& problem,
                        const Eigen::VectorXd& beta, double phi,
                        int q_exponent) {
    if (beta.size() != problem.p()) {
        throw std::invalid_argument("coefficient vector length does not match the design");
    }
    const SmoothParts parts = smooth_parts(problem, beta, phi, q_exponent);
    if (parts.degenerate) {
        throw SolverError("surrogate undefined: correlation vector is exactly zero");
    }
    return parts.value + beta.lpNorm<1>();
}

Eigen::VectorXd smooth_gradient(const trex::RegressionProblem& problem,
                                const Eigen::VectorXd& beta, double phi,
                                int q_exponent) {
    if (beta.size() != problem.p()) {
        throw std::invalid_argument("coefficient vector length does not match the design");
    }
    const SmoothParts parts = smooth_parts(problem, beta, phi, q_exponent);
    if (parts.degenerate) {
        throw SolverError("surrogate undefined: correlation vector is exactly zero");
    }
    // d/dbeta [ ||r||^2 / (phi ||u||_q) ] with r = Y - X beta, u = X'r:
    //   d||r||^2 = -2u;  d||u||_q = -X'X g,  g_i = (u_i/||u||_q)^(q-1);
    // quotient rule gives (-2u + (||r||^2/||u||_q) X'X g) / (phi ||u||_q).
    const double scale = parts.correlation.lpNorm<Eigen::Infinity>();
    double power_sum = 0.0;
    for (Eigen::Index i = 0; i < parts.correlation.size(); ++i) {
        power_sum += std::pow(std::abs(parts.correlation(i)) / scale, q_exponent);
    }
    Eigen::VectorXd g(parts.correlation.size());
    const double denom_pow =
        std::pow(power_sum, static_cast<double>(q_exponent - 1) / q_exponent);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        const double ratio = parts.correlation(i) / scale;  // in [-1, 1]
        double mag = std::pow(std::abs(ratio), q_exponent - 1) / denom_pow;
        g(i) = ratio < 0.0 ? -mag : mag;
    }
    const Eigen::VectorXd xxg =
        problem.X.transpose() * (problem.X * g);
    const double rss = parts.residual.squaredNorm();
    return (-2.0 * parts.correlation + (rss / parts.lq) * xxg) /
           (phi * parts.lq);
}

SolveOutcome qtrex_solve(const trex::RegressionProblem& problem,
                         const QtrexParams& params,
                         const Eigen::VectorXd& initial_beta) {
    check_params(params);
    if (initial_beta.size() != problem.p() || !initial_beta.allFinite()) {
        throw std::invalid_argument("initial point must be finite and of length p");
    }

    SolveOutcome out;
    out.beta = initial_beta;

    auto soft_threshold = [](const Eigen::VectorXd& z, double level) {
        return z.unaryExpr([level](double v) {
            if (v > level) return v - level;
            if (v < -level) return v + level;
            return 0.0;
        });
    };

    SmoothParts parts = smooth_parts(problem, out.beta, params.phi, params.q_exponent);
    for (int attempt = 0; parts.degenerate; ++attempt) {
        // Deterministic nudge off the degenerate point (exact fits and
        // correlation-free residuals both land here).
        if (attempt >= 5) {
            throw SolverError("could not leave a degenerate starting point");
        }
        out.perturbed = true;
        const double bump = 1e-6 * (attempt + 1);
        for (Eigen::Index j = 0; j < out.beta.size(); ++j) {
            out.beta(j) += (j % 2 == 0 ? bump : -bump);
        }
        parts = smooth_parts(problem, out.beta, params.phi, params.q_exponent);
    }
    double current = parts.value + out.beta.lpNorm<1>();

    for (int iter = 1; iter <= params.max_iterations; ++iter) {
        out.iterations = iter;
        const Eigen::VectorXd grad =
            smooth_gradient(problem, out.beta, params.phi, params.q_exponent);

        double step = 1.0;
        Eigen::VectorXd candidate;
        SmoothParts cand_parts;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            candidate = soft_threshold(out.beta - step * grad, step);
            cand_parts =
                smooth_parts(problem, candidate, params.phi, params.q_exponent);
            if (!cand_parts.degenerate) {
                const Eigen::VectorXd diff = candidate - out.beta;
                const double quad =
                    parts.value + grad.dot(diff) + diff.squaredNorm() / (2.0 * step);
                if (cand_parts.value <= quad + 1e-12 * (1.0 + std::abs(quad))) {
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!accepted) break;  // step has collapsed; current point is the answer

        const double moved = (candidate - out.beta).lpNorm<Eigen::Infinity>();
        const double next = cand_parts.value + candidate.lpNorm<1>();
        out.beta = std::move(candidate);
        parts = std::move(cand_parts);
        const double drop = current - next;
        current = next;
        if (moved <= params.step_tolerance * (1.0 + out.beta.lpNorm<Eigen::Infinity>())) {
            break;
        }
        if (std::abs(drop) <= params.value_tolerance * (1.0 + std::abs(current))) {
            break;
        }
    }

    out.smooth_value = current;
    out.exact_value = trex::trex_objective(problem, out.beta, params.phi);
    return out;
}

QtrexResult qtrex_multistart(const trex::RegressionProblem& problem,
                             const QtrexParams& params, int parallelism) {
    check_params(params);
    const Eigen::Index p = problem.p();
    const auto num_starts = static_cast<std::size_t>(params.n_starts);

    QtrexResult result;
    result.traces.resize(num_starts);
    std::vector<Eigen::VectorXd> betas(num_starts);

    parallel_for(num_starts, static_cast<unsigned>(std::max(1, parallelism)),
                 [&](std::size_t s) {
        Eigen::VectorXd start = Eigen::VectorXd::Zero(p);
        if (s > 0) {
            Rng rng = Rng::derive(params.seed, s);
            const auto nonzero = static_cast<Eigen::Index>(
                std::ceil(params.nonzero_fraction * static_cast<double>(p)));
            const auto positions = rng.sample_without_replacement(p, nonzero);
            for (const auto pos : positions) start(pos) = rng.normal();
        }
        SolveOutcome outcome;
        try {
            outcome = qtrex_solve(problem, params, start);
        } catch (const SolverError&) {
            outcome.beta = start;
            outcome.exact_value = std::numeric_limits<double>::infinity();
            outcome.smooth_value = std::numeric_limits<double>::infinity();
        }
        StartTrace& trace = result.traces[s];
        trace.start_index = static_cast<int>(s);
        trace.smooth_value = outcome.smooth_value;
        trace.exact_value = outcome.exact_value;
        trace.iterations = outcome.iterations;
        trace.perturbed = outcome.perturbed;
        betas[s] = std::move(outcome.beta);
    });

    result.best_start = -1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < num_starts; ++s) {
        if (result.traces[s].exact_value < best) {
            best = result.traces[s].exact_value;
            result.best_start = static_cast<int>(s);
        }
    }
    if (result.best_start < 0) {
        throw SolverError("every start failed on a degenerate objective");
    }
    result.best_value = best;
    result.best_beta = betas[static_cast<std::size_t>(result.best_start)];
    return result;
}

void write_traces_csv(const std::string& path, const QtrexResult& result) {
    Eigen::MatrixXd table(static_cast<Eigen::Index>(result.traces.size()), 4);
    for (Eigen::Index i = 0; i < table.rows(); ++i) {
        const auto& t = result.traces[static_cast<std::size_t>(i)];
        table(i, 0) = t.start_index;
        table(i, 1) = t.smooth_value;
        table(i, 2) = t.exact_value;
        table(i, 3) = t.iterations;
    }
    io::write_matrix_csv(path, table,
                         {"start", "smooth_value", "exact_value", "iterations"});
}

}  // namespace trexkit::qtrex
