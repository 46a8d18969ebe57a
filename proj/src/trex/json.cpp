#include "trexkit/trex/json.hpp"

namespace trexkit::trex {

namespace {

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

}  // namespace

nlohmann::json solution_to_json(const TrexSolution& solution, double phi) {
    nlohmann::json j;
    j["phi"] = phi;
    j["value"] = solution.value;
    j["winner"] = {{"feature", solution.winner_feature},
                   {"sign", solution.winner_sign}};
    j["beta_hat"] = vector_to_json(solution.beta_hat);
    nlohmann::json subs = nlohmann::json::array();
    for (const auto& sub : solution.all_values) {
        subs.push_back({{"feature", sub.feature},
                        {"sign", sub.sign},
                        {"value", sub.value},
                        {"status", conic::to_string(sub.status)},
                        {"iterations", sub.iterations}});
    }
    j["subproblems"] = std::move(subs);
    return j;
}

nlohmann::json path_to_json(const TrexPath& path) {
    nlohmann::json j;
    nlohmann::json points = nlohmann::json::array();
    for (const auto& point : path.points) {
        points.push_back(solution_to_json(point.solution, point.phi));
    }
    j["points"] = std::move(points);
    j["entry_values"] = vector_to_json(path.entry_values);
    j["total_iterations"] = path.total_iterations;
    return j;
}

nlohmann::json topology_to_json(const TopologyReport& report) {
    nlohmann::json j;
    j["sorted_values"] = report.sorted_values;
    j["per_feature_value"] = vector_to_json(report.per_feature_value);
    j["importance"] = vector_to_json(report.importance);
    j["importance_order"] = report.importance_order;
    j["histogram_edges"] = report.histogram_edges;
    j["histogram_counts"] = report.histogram_counts;
    nlohmann::json failed = nlohmann::json::array();
    for (const auto& [feature, sign] : report.failed) {
        failed.push_back({{"feature", feature}, {"sign", sign}});
    }
    j["failed"] = std::move(failed);
    return j;
}

}  // namespace trexkit::trex
