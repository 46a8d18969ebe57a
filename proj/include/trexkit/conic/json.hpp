#pragma once

#include <json.hpp>

#include "trexkit/conic/problem.hpp"
#include "trexkit/conic/solver.hpp"

namespace trexkit::conic {

// Cone program interchange layout:
//   {
//     "c": [..n..],
//     "b": [..m..],
//     "A": {"rows": m, "cols": n, "triplets": [[i, j, value], ...]},
//     "cones": {"zero": z, "nonneg": l, "soc": [d1, d2, ...]}
//   }
// "A" may instead carry "dense": [[row 0], [row 1], ...]. All fields of
// "cones" are optional and default to empty.
nlohmann::json problem_to_json(const ConicProblem& problem);
ConicProblem problem_from_json(const nlohmann::json& j);

// Solution layout: status string, x/y/slack arrays, iteration count, and the
// three normalized residuals.
nlohmann::json solution_to_json(const ConicSolution& solution);

}  // namespace trexkit::conic
