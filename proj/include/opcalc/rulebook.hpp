#pragma once

#include <string_view>
#include <vector>

#include "opcalc/inference.hpp"

namespace opcalc {

inline constexpr std::string_view kRulebookVersion = "1";

/// Structural rules (ids S-*) followed by the product, adjoint and normality
/// results (ids R-*). Built once.
const std::vector<Rule>& rulebook();

/// Throws std::out_of_range for an unknown id.
const Rule& find_rule(std::string_view id);

}  // namespace opcalc
