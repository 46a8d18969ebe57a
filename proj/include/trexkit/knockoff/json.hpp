#pragma once

#include <json.hpp>

#include "trexkit/knockoff/filter.hpp"

namespace trexkit::knockoff {

// Report layout:
//   {"statistic", "q", "threshold" (null when infinite), "selected": [...],
//    "W": [...], "Z": [...] (infinities as null),
//    "model": {"s", "augmented", "original_rows", "gram_error"}}
nlohmann::json filter_to_json(const FilterResult& result);

}  // namespace trexkit::knockoff
