#pragma once

#include <json.hpp>

#include "definetti/families.hpp"

namespace definetti::detail {

nlohmann::json family_to_json(const FamilySpec& spec);
FamilySpec family_from_json(const nlohmann::json& j);

}  // namespace definetti::detail
