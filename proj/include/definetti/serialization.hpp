#pragma once

#include <string>

#include "definetti/count_pmf.hpp"
#include "definetti/families.hpp"

namespace definetti {

// JSON interchange. CountPmf: {"n": int, "mass": [floats]}.
// FamilySpec: {"kind": string, "params": {...}, "seed": uint64 (random kinds)}.
std::string count_pmf_to_json(const CountPmf& pi);
CountPmf count_pmf_from_json(const std::string& text);

std::string family_spec_to_json(const FamilySpec& spec);
FamilySpec family_spec_from_json(const std::string& text);

}  // namespace definetti
