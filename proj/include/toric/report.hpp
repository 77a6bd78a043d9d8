#pragma once

// JSON and CSV forms of congruence reports. Wall-clock time lives in its own
// "timing" object so that everything else is reproducible byte for byte.

#include <string>
#include <vector>

#include <json.hpp>

#include "toric/count.hpp"

namespace toric {

nlohmann::ordered_json to_json(const CongruenceReport& r, bool include_timing = true);

std::string csv_header();
std::string to_csv_row(const CongruenceReport& r, bool include_timing = true);

/// Exact integers go out as decimal strings when they exceed 2^53.
nlohmann::ordered_json integer_json(const Integer& n);

}  // namespace toric
