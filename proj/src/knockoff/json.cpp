#include "trexkit/knockoff/json.hpp"

#include <cmath>

namespace trexkit::knockoff {

namespace {

nlohmann::json finite_or_null(double value) {
    if (std::isfinite(value)) return value;
    return nullptr;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(finite_or_null(v(i)));
    return arr;
}

}  // namespace

nlohmann::json filter_to_json(const FilterResult& result) {
    nlohmann::json j;
    j["statistic"] = result.statistic_name;
    j["q"] = result.q;
    j["threshold"] = finite_or_null(result.selection.threshold);
    j["selected"] = result.selection.selected;
    j["W"] = vector_to_json(result.statistic.W);
    j["Z"] = vector_to_json(result.statistic.Z);
    j["model"] = {{"s", result.model.s},
                  {"augmented", result.model.augmented},
                  {"original_rows", result.model.original_rows},
                  {"gram_error", gram_identity_error(result.model)}};
    return j;
}

}  // namespace trexkit::knockoff
