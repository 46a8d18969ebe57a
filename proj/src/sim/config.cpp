#include "trexkit/sim/config.hpp"

#include <cmath>
#include <fstream>

#include "trexkit/errors.hpp"

namespace trexkit::sim {

namespace {

std::string pattern_name(BetaPattern pattern) {
    switch (pattern) {
        case BetaPattern::unit: return "unit";
        case BetaPattern::amplitude: return "amplitude";
        case BetaPattern::ramp: return "ramp";
    }
    return "unit";
}

std::string noise_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::homoscedastic: return "homoscedastic";
        case NoiseKind::heteroscedastic: return "heteroscedastic";
        case NoiseKind::correlated: return "correlated";
    }
    return "homoscedastic";
}

}  // namespace

void validate_config(const SimConfig& config) {
    if (config.n < 1) throw ConfigError("n must be at least 1");
    if (config.p < 1) throw ConfigError("p must be at least 1");
    if (config.sparsity < 0 || config.sparsity > config.p) {
        throw ConfigError("sparsity must lie in [0, p]");
    }
    if (!(config.kappa >= 0.0) || config.kappa >= 1.0) {
        throw ConfigError("kappa must lie in [0, 1)");
    }
    if (!(config.sigma > 0.0)) throw ConfigError("sigma must be positive");
    if (!(config.sigma1 > 0.0) || config.sigma1 * config.sigma1 >= 2.0) {
        throw ConfigError("sigma1 must be positive with sigma1^2 < 2");
    }
    if (!(config.noise_kappa >= 0.0) || config.noise_kappa >= 1.0) {
        throw ConfigError("noise kappa must lie in [0, 1)");
    }
    if (config.n_reps < 1) throw ConfigError("n_reps must be at least 1");
    if (!(config.phi > 0.0)) throw ConfigError("phi must be positive");
    for (std::size_t k = 0; k < config.phi_grid.size(); ++k) {
        if (!(config.phi_grid[k] > 0.0)) {
            throw ConfigError("phi_grid entries must be positive");
        }
        if (k > 0 && config.phi_grid[k] >= config.phi_grid[k - 1]) {
            throw ConfigError("phi_grid must be strictly decreasing");
        }
    }
    if (config.q_levels.empty()) throw ConfigError("q_levels must not be empty");
    for (const double q : config.q_levels) {
        if (!(q > 0.0) || q >= 1.0) throw ConfigError("q_levels must lie in (0, 1)");
    }
    if (config.statistics.empty()) {
        throw ConfigError("statistics must not be empty");
    }
    for (const auto& name : config.statistics) {
        if (name != "lasso" && name != "phi-path" && name != "f-value") {
            throw ConfigError("unknown statistic '" + name + "'");
        }
    }
    if (config.n_starts < 1) throw ConfigError("n_starts must be at least 1");
    if (!(config.success_tolerance > 0.0)) {
        throw ConfigError("success_tolerance must be positive");
    }
}

SimConfig config_from_json(const nlohmann::json& j) {
    SimConfig config;
    try {
        if (j.contains("n")) config.n = j.at("n").get<Eigen::Index>();
        if (j.contains("p")) config.p = j.at("p").get<Eigen::Index>();
        if (j.contains("sparsity")) {
            config.sparsity = j.at("sparsity").get<Eigen::Index>();
        }
        if (j.contains("beta_pattern")) {
            const auto& bp = j.at("beta_pattern");
            const auto kind = bp.at("kind").get<std::string>();
            if (kind == "unit") {
                config.beta_pattern = BetaPattern::unit;
            } else if (kind == "amplitude") {
                config.beta_pattern = BetaPattern::amplitude;
            } else if (kind == "ramp") {
                config.beta_pattern = BetaPattern::ramp;
            } else {
                throw ConfigError("beta_pattern.kind must be unit, amplitude, or ramp");
            }
            if (bp.contains("value")) config.beta_value = bp.at("value").get<double>();
        }
        if (j.contains("kappa")) config.kappa = j.at("kappa").get<double>();
        if (j.contains("noise")) {
            const auto& nz = j.at("noise");
            const auto kind = nz.at("kind").get<std::string>();
            if (kind == "homoscedastic") {
                config.noise = NoiseKind::homoscedastic;
            } else if (kind == "heteroscedastic") {
                config.noise = NoiseKind::heteroscedastic;
            } else if (kind == "correlated") {
                config.noise = NoiseKind::correlated;
            } else {
                throw ConfigError(
                    "noise.kind must be homoscedastic, heteroscedastic, or correlated");
            }
            if (nz.contains("sigma")) config.sigma = nz.at("sigma").get<double>();
            if (nz.contains("sigma1")) config.sigma1 = nz.at("sigma1").get<double>();
            // Correlated noise mirrors the feature correlation unless given.
            config.noise_kappa = nz.contains("kappa") ? nz.at("kappa").get<double>()
                                                      : config.kappa;
        }
        if (j.contains("n_reps")) config.n_reps = j.at("n_reps").get<int>();
        if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("normalize")) config.normalize = j.at("normalize").get<bool>();
        if (j.contains("phi")) config.phi = j.at("phi").get<double>();
        if (j.contains("phi_grid")) {
            config.phi_grid = j.at("phi_grid").get<std::vector<double>>();
        }
        if (j.contains("q_levels")) {
            config.q_levels = j.at("q_levels").get<std::vector<double>>();
        }
        if (j.contains("statistics")) {
            config.statistics = j.at("statistics").get<std::vector<std::string>>();
        }
        if (j.contains("n_starts")) config.n_starts = j.at("n_starts").get<int>();
        if (j.contains("success_tolerance")) {
            config.success_tolerance = j.at("success_tolerance").get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed experiment config: ") + e.what());
    }
    validate_config(config);
    return config;
}

nlohmann::json config_to_json(const SimConfig& config) {
    nlohmann::json j;
    j["n"] = config.n;
    j["p"] = config.p;
    j["sparsity"] = config.sparsity;
    j["beta_pattern"] = {{"kind", pattern_name(config.beta_pattern)},
                         {"value", config.beta_value}};
    j["kappa"] = config.kappa;
    nlohmann::json nz;
    nz["kind"] = noise_name(config.noise);
    nz["sigma"] = config.sigma;
    nz["sigma1"] = config.sigma1;
    nz["kappa"] = config.noise_kappa;
    j["noise"] = std::move(nz);
    j["n_reps"] = config.n_reps;
    j["seed"] = config.seed;
    j["normalize"] = config.normalize;
    j["phi"] = config.phi;
    if (!config.phi_grid.empty()) j["phi_grid"] = config.phi_grid;
    j["q_levels"] = config.q_levels;
    j["statistics"] = config.statistics;
    j["n_starts"] = config.n_starts;
    j["success_tolerance"] = config.success_tolerance;
    return j;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

}  // namespace trexkit::sim
