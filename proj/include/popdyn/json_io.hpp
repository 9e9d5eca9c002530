#pragma once

#include <json.hpp>

#include "popdyn/semiring.hpp"

namespace popdyn {

/// Element serialization:
///   {"group": {"factors": [4, 20]},
///    "terms": [{"g": <id or [j, n] tuple>,
///               "coeff": [b0, b1, b2, b3] | {"re": .., "im": ..}}]}
/// Single-factor groups store "g" as a plain id, products as a component
/// tuple.
nlohmann::json element_to_json(const SemiringElement& q);
nlohmann::json element_to_json(const AlgebraElement& q);

SemiringElement semiring_element_from_json(const nlohmann::json& j);
AlgebraElement algebra_element_from_json(const nlohmann::json& j);

nlohmann::json group_to_json(const FiniteGroup& group);
FiniteGroup group_from_json(const nlohmann::json& j);

}  // namespace popdyn
