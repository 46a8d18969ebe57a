#include "trexkit/sim/generate.hpp"

#include <cmath>
#include <stdexcept>

#include "trexkit/util/rng.hpp"

namespace trexkit::sim {

Eigen::VectorXd planted_coefficients(const SimConfig& config) {
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(config.p);
    for (Eigen::Index j = 0; j < config.sparsity; ++j) {
        switch (config.beta_pattern) {
            case BetaPattern::unit:
                beta(j) = 1.0;
                break;
            case BetaPattern::amplitude:
                beta(j) = config.beta_value;
                break;
            case BetaPattern::ramp:
                beta(j) = config.beta_value * static_cast<double>(j + 1) /
                          static_cast<double>(config.sparsity);
                break;
        }
    }
    return beta;
}

SimData gen_linear_data(const SimConfig& config, int rep_index) {
    validate_config(config);
    Rng rng = Rng::derive(config.seed, static_cast<std::uint64_t>(rep_index));
    const Eigen::Index n = config.n;
    const Eigen::Index p = config.p;

    // Equi-correlated rows: x_i = sqrt(1-kappa) g_i + sqrt(kappa) z_i 1.
    // The shared factor is drawn even at kappa = 0 so runs with different
    // kappa stay on matched streams.
    Eigen::MatrixXd X(n, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) X(i, j) = rng.normal();
    }
    const double mix = std::sqrt(config.kappa);
    const double keep = std::sqrt(1.0 - config.kappa);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double shared = rng.normal();
        X.row(i) = keep * X.row(i).eval() +
                   mix * shared * Eigen::RowVectorXd::Ones(p);
    }

    Eigen::VectorXd noise(n);
    switch (config.noise) {
        case NoiseKind::homoscedastic: {
            for (Eigen::Index i = 0; i < n; ++i) {
                noise(i) = config.sigma * rng.normal();
            }
            break;
        }
        case NoiseKind::heteroscedastic: {
            // Per-observation level drawn uniformly from {sigma1, sigma2},
            // sigma2^2 = 2 - sigma1^2, so the average variance stays at 1.
            const double sigma2 =
                std::sqrt(2.0 - config.sigma1 * config.sigma1);
            for (Eigen::Index i = 0; i < n; ++i) noise(i) = rng.normal();
            for (Eigen::Index i = 0; i < n; ++i) {
                noise(i) *= rng.uniform() < 0.5 ? config.sigma1 : sigma2;
            }
            break;
        }
        case NoiseKind::correlated: {
            for (Eigen::Index i = 0; i < n; ++i) noise(i) = rng.normal();
            const double shared = rng.normal();
            const double nk = config.noise_kappa;
            noise = std::sqrt(1.0 - nk) * noise.eval() +
                    std::sqrt(nk) * shared * Eigen::VectorXd::Ones(n);
            break;
        }
    }

    if (config.normalize) {
        for (Eigen::Index j = 0; j < p; ++j) {
            X.col(j).array() -= X.col(j).mean();
            const double norm = X.col(j).norm();
            if (norm > 0.0) X.col(j) /= norm;
        }
    }

    SimData data;
    data.beta_star = planted_coefficients(config);
    const Eigen::VectorXd Y = X * data.beta_star + noise;
    data.problem = trex::make_regression_problem(std::move(X), Y);
    return data;
}

double estimation_error(const Eigen::VectorXd& beta_hat,
                        const Eigen::VectorXd& beta_star) {
    if (beta_hat.size() != beta_star.size()) {
        throw std::invalid_argument("estimate and target have different lengths");
    }
    return (beta_hat - beta_star).norm();
}

}  // namespace trexkit::sim
