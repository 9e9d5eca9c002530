#include "popdyn/json_io.hpp"

namespace popdyn {

namespace {

nlohmann::json element_id_to_json(const FiniteGroup& group, std::int64_t id) {
  if (group.moduli().size() == 1) {
    return id;
  }
  return group.components(GroupElement{id});
}

GroupElement element_id_from_json(const FiniteGroup& group, const nlohmann::json& j) {
  if (j.is_array()) {
    const auto components = j.get<std::vector<std::int64_t>>();
    return group.element(components);
  }
  const GroupElement g{j.get<std::int64_t>()};
  if (!group.contains(g)) {
    throw DomainError("element id out of range for the group");
  }
  return g;
}

template <class Coeff>
nlohmann::json terms_to_json(const FormalSum<Coeff>& q,
                             nlohmann::json (*coeff_to_json)(const Coeff&)) {
  nlohmann::json out;
  out["group"] = group_to_json(q.group());
  out["terms"] = nlohmann::json::array();
  for (const auto& [id, c] : q.terms()) {
    out["terms"].push_back({{"g", element_id_to_json(q.group(), id)},
                            {"coeff", coeff_to_json(c)}});
  }
  return out;
}

nlohmann::json quad_to_json(const PosQuad& c) {
  return nlohmann::json::array({c[0], c[1], c[2], c[3]});
}

nlohmann::json complex_to_json(const Complex& c) {
  return {{"re", c.real()}, {"im", c.imag()}};
}

}  // namespace

nlohmann::json group_to_json(const FiniteGroup& group) {
  return {{"factors", group.moduli()}};
}

FiniteGroup group_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("factors")) {
    throw DomainError("group JSON must carry a factors array");
  }
  const auto factors = j.at("factors").get<std::vector<std::int64_t>>();
  if (factors.empty()) {
    throw DomainError("group JSON needs at least one factor");
  }
  FiniteGroup out = FiniteGroup::cyclic(factors[0]);
  for (std::size_t i = 1; i < factors.size(); ++i) {
    out = FiniteGroup::product(out, FiniteGroup::cyclic(factors[i]));
  }
  return out;
}

nlohmann::json element_to_json(const SemiringElement& q) {
  return terms_to_json<PosQuad>(q, &quad_to_json);
}

nlohmann::json element_to_json(const AlgebraElement& q) {
  return terms_to_json<Complex>(q, &complex_to_json);
}

SemiringElement semiring_element_from_json(const nlohmann::json& j) {
  SemiringElement out(group_from_json(j.at("group")));
  for (const auto& term : j.at("terms")) {
    const auto coeff = term.at("coeff").get<std::vector<double>>();
    if (coeff.size() != 4) {
      throw DomainError("semiring coefficient must have four entries");
    }
    out.add_term(element_id_from_json(out.group(), term.at("g")),
                 PosQuad(coeff[0], coeff[1], coeff[2], coeff[3]));
  }
  return out;
}

AlgebraElement algebra_element_from_json(const nlohmann::json& j) {
  AlgebraElement out(group_from_json(j.at("group")));
  for (const auto& term : j.at("terms")) {
    const auto& coeff = term.at("coeff");
    out.add_term(element_id_from_json(out.group(), term.at("g")),
                 Complex{coeff.at("re").get<double>(), coeff.at("im").get<double>()});
  }
  return out;
}

}  // namespace popdyn
