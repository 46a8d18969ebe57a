#include "trexkit/conic/json.hpp"

#include <vector>

#include "trexkit/errors.hpp"

namespace trexkit::conic {

namespace {

Eigen::VectorXd vector_from_json(const nlohmann::json& j, const char* field) {
    if (!j.is_array()) {
        throw ConfigError(std::string("field \"") + field + "\" must be an array");
    }
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    Eigen::Index at = 0;
    for (const auto& e : j) {
        if (!e.is_number()) {
            throw ConfigError(std::string("field \"") + field +
                              "\" must contain only numbers");
        }
        v(at++) = e.get<double>();
    }
    return v;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

}  // namespace

nlohmann::json problem_to_json(const ConicProblem& problem) {
    nlohmann::json j;
    j["c"] = vector_to_json(problem.c);
    j["b"] = vector_to_json(problem.b);
    nlohmann::json a;
    a["rows"] = problem.A.rows();
    a["cols"] = problem.A.cols();
    nlohmann::json trips = nlohmann::json::array();
    for (int k = 0; k < problem.A.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(problem.A, k); it; ++it) {
            trips.push_back({it.row(), it.col(), it.value()});
        }
    }
    a["triplets"] = std::move(trips);
    j["A"] = std::move(a);
    nlohmann::json cones;
    cones["zero"] = problem.cones.zero_dim;
    cones["nonneg"] = problem.cones.nonneg_dim;
    cones["soc"] = problem.cones.soc_dims;
    j["cones"] = std::move(cones);
    return j;
}

ConicProblem problem_from_json(const nlohmann::json& j) {
    ConicProblem p;
    if (!j.contains("c") || !j.contains("b") || !j.contains("A")) {
        throw ConfigError("cone program requires \"c\", \"b\", and \"A\" fields");
    }
    p.c = vector_from_json(j.at("c"), "c");
    p.b = vector_from_json(j.at("b"), "b");

    const auto& a = j.at("A");
    if (!a.is_object() || !a.contains("rows") || !a.contains("cols")) {
        throw ConfigError("\"A\" must be an object with \"rows\" and \"cols\"");
    }
    const auto rows = a.at("rows").get<Eigen::Index>();
    const auto cols = a.at("cols").get<Eigen::Index>();
    if (rows < 0 || cols < 0) throw ConfigError("\"A\" dimensions must be nonnegative");
    p.A.resize(rows, cols);
    std::vector<Eigen::Triplet<double>> trips;
    if (a.contains("triplets")) {
        for (const auto& t : a.at("triplets")) {
            if (!t.is_array() || t.size() != 3) {
                throw ConfigError("each entry of \"triplets\" must be [row, col, value]");
            }
            const auto r = t[0].get<Eigen::Index>();
            const auto c = t[1].get<Eigen::Index>();
            if (r < 0 || r >= rows || c < 0 || c >= cols) {
                throw ConfigError("triplet index out of range");
            }
            trips.emplace_back(r, c, t[2].get<double>());
        }
    } else if (a.contains("dense")) {
        const auto& dense = a.at("dense");
        if (!dense.is_array() || static_cast<Eigen::Index>(dense.size()) != rows) {
            throw ConfigError("\"dense\" must have exactly \"rows\" rows");
        }
        for (Eigen::Index r = 0; r < rows; ++r) {
            const auto& row = dense[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
                throw ConfigError("row " + std::to_string(r) +
                                  " of \"dense\" has the wrong length");
            }
            for (Eigen::Index c = 0; c < cols; ++c) {
                const double val = row[static_cast<std::size_t>(c)].get<double>();
                if (val != 0.0) trips.emplace_back(r, c, val);
            }
        }
    } else {
        throw ConfigError("\"A\" must carry either \"triplets\" or \"dense\"");
    }
    p.A.setFromTriplets(trips.begin(), trips.end());

    if (j.contains("cones")) {
        const auto& cones = j.at("cones");
        p.cones.zero_dim = cones.value("zero", Eigen::Index{0});
        p.cones.nonneg_dim = cones.value("nonneg", Eigen::Index{0});
        if (cones.contains("soc")) {
            p.cones.soc_dims = cones.at("soc").get<std::vector<Eigen::Index>>();
        }
    }
    return p;
}

nlohmann::json solution_to_json(const ConicSolution& solution) {
    nlohmann::json j;
    j["status"] = to_string(solution.status);
    j["x"] = vector_to_json(solution.x);
    j["y"] = vector_to_json(solution.y);
    j["slack"] = vector_to_json(solution.slack);
    j["iterations"] = solution.iterations;
    j["primal_residual"] = solution.primal_residual;
    j["dual_residual"] = solution.dual_residual;
    j["duality_gap"] = solution.duality_gap;
    return j;
}

}  // namespace trexkit::conic
