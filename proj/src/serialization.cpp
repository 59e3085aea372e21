#include "definetti/serialization.hpp"

#include <stdexcept>

#include <json.hpp>

#include "serialization_detail.hpp"

namespace definetti {

using nlohmann::json;

namespace {

json family_spec_to_json_value(const FamilySpec& spec) {
  json j;
  json params = json::object();
  switch (spec.kind) {
    case FamilySpec::Kind::iid:
      j["kind"] = "iid";
      params["p"] = spec.p;
      break;
    case FamilySpec::Kind::point_mass:
      j["kind"] = "point_mass";
      if (spec.ell_fraction >= 0.0) {
        params["ell_fraction"] = spec.ell_fraction;
      } else {
        params["ell"] = spec.ell;
      }
      break;
    case FamilySpec::Kind::polya:
      j["kind"] = "polya";
      params["a"] = spec.a;
      params["b"] = spec.b;
      break;
    case FamilySpec::Kind::uniform_counts:
      j["kind"] = "uniform_counts";
      break;
    case FamilySpec::Kind::random_dirichlet:
      j["kind"] = "random_dirichlet";
      j["seed"] = spec.seed;
      break;
  }
  j["params"] = params;
  return j;
}

FamilySpec family_spec_from_json_value(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const json params = j.value("params", json::object());
  if (kind == "iid") return FamilySpec::iid(params.at("p").get<double>());
  if (kind == "point_mass") {
    if (params.contains("ell_fraction")) {
      return FamilySpec::point_mass_fraction(params.at("ell_fraction").get<double>());
    }
    return FamilySpec::point_mass(params.at("ell").get<int>());
  }
  if (kind == "polya") {
    return FamilySpec::polya(params.at("a").get<double>(), params.at("b").get<double>());
  }
  if (kind == "uniform_counts") return FamilySpec::uniform_counts();
  if (kind == "random_dirichlet") {
    return FamilySpec::random_dirichlet(j.at("seed").get<std::uint64_t>());
  }
  throw std::invalid_argument("families: unknown kind '" + kind + "'");
}

}  // namespace

std::string count_pmf_to_json(const CountPmf& pi) {
  json j;
  j["n"] = pi.n();
  j["mass"] = pi.mass();
  return j.dump();
}

CountPmf count_pmf_from_json(const std::string& text) {
  const json j = json::parse(text);
  return make_count_pmf(j.at("n").get<int>(), j.at("mass").get<std::vector<double>>());
}

std::string family_spec_to_json(const FamilySpec& spec) {
  return family_spec_to_json_value(spec).dump();
}

FamilySpec family_spec_from_json(const std::string& text) {
  return family_spec_from_json_value(json::parse(text));
}

namespace detail {

// Shared with harness config parsing, which works on json values directly.
json family_to_json(const FamilySpec& spec) { return family_spec_to_json_value(spec); }
FamilySpec family_from_json(const json& j) { return family_spec_from_json_value(j); }

}  // namespace detail

}  // namespace definetti
