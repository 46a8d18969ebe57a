#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include <Eigen/Core>

namespace trexkit::sim {

enum class BetaPattern { unit, amplitude, ramp };
enum class NoiseKind { homoscedastic, heteroscedastic, correlated };

// One experiment description; every harness is a pure function of it.
struct SimConfig {
    Eigen::Index n = 50;
    Eigen::Index p = 100;
    Eigen::Index sparsity = 5;  // number of leading nonzero coefficients

    BetaPattern beta_pattern = BetaPattern::unit;
    double beta_value = 1.0;  // level for amplitude, peak for ramp

    double kappa = 0.0;  // equi-correlation of the features

    NoiseKind noise = NoiseKind::homoscedastic;
    double sigma = 1.0;        // homoscedastic level
    double sigma1 = 0.7;       // heteroscedastic low level; sigma2^2 = 2 - sigma1^2
    double noise_kappa = 0.0;  // correlated-noise equi-correlation

    int n_reps = 10;
    std::uint64_t seed = 0;
    bool normalize = true;  // center and unit-normalize design columns

    double phi = 0.5;
    std::vector<double> phi_grid;  // optional, strictly decreasing when set

    std::vector<double> q_levels = {0.1, 0.2};
    std::vector<std::string> statistics = {"f-value", "lasso"};

    int n_starts = 21;                // heuristic restarts per repetition
    double success_tolerance = 1e-4;  // closeness to the certified value
};

// Throws ConfigError naming the offending field.
void validate_config(const SimConfig& config);

// JSON layout (all fields optional, defaults above):
//   {"n", "p", "sparsity", "beta_pattern": {"kind", "value"}, "kappa",
//    "noise": {"kind", "sigma", "sigma1", "kappa"}, "n_reps", "seed",
//    "normalize", "phi", "phi_grid", "q_levels", "statistics", "n_starts",
//    "success_tolerance"}
SimConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SimConfig& config);
SimConfig load_config(const std::string& path);

}  // namespace trexkit::sim
