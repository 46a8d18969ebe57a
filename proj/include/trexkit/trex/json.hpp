#pragma once

#include <json.hpp>

#include "trexkit/trex/ctrex.hpp"
#include "trexkit/trex/path.hpp"
#include "trexkit/trex/topology.hpp"

namespace trexkit::trex {

// TrexSolution layout: "phi", "value", "winner" {"feature", "sign"},
// "beta_hat" array, and "subproblems" — one record per (feature, sign) with
// the optimal value, status, and iteration count (coefficients are kept only
// for the winner; the value list alone reproduces the landscape plots).
nlohmann::json solution_to_json(const TrexSolution& solution, double phi);

nlohmann::json path_to_json(const TrexPath& path);

nlohmann::json topology_to_json(const TopologyReport& report);

}  // namespace trexkit::trex
