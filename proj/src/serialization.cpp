#include "tatess/serialization.hpp"

#include <stdexcept>

namespace tatess {

namespace {

template <class T>
T field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(std::string("field '") + key + "' has the wrong type");
  }
}

Json threshold_json(const Threshold& t) { return t.is_everywhere() ? Json("-inf") : Json(t.value()); }

Json monomial_json(const AlgebraPresentation& pres, const Monomial& m) {
  Json out = Json::object();
  for (std::size_t i = 0; i < pres.size(); ++i)
    if (m.exponents[i] != 0) out[pres.generator(i).name] = m.exponents[i];
  return out;
}

Monomial monomial_from_json(const AlgebraPresentation& pres, const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("monomial must be an object of exponents");
  auto m = Monomial::unit(pres);
  for (const auto& [name, e] : doc.items()) {
    if (!e.is_number_integer()) throw std::invalid_argument("exponent of '" + name + "' must be an integer");
    m.exponents[pres.index_of(name)] = e.get<std::int64_t>();
  }
  if (!in_domain(pres, m)) throw std::invalid_argument("monomial outside the algebra: " + to_string(pres, m));
  return m;
}

}  // namespace

Json to_json(const AlgebraPresentation& pres) {
  Json gens = Json::array();
  for (const auto& g : pres.generators())
    gens.push_back({{"name", g.name}, {"s", g.degree.s}, {"t", g.degree.t}, {"domain", to_string(g.domain)}});
  Json out{{"prime", pres.prime()}, {"generators", gens}};
  if (pres.coefficients() == CoefficientField::extension_field) out["coefficients"] = "extension";
  if (auto l = pres.localizing_generator()) out["localizing"] = pres.generator(*l).name;
  return out;
}

AlgebraPresentation presentation_from_json(const Json& doc) {
  const auto prime = field<std::int64_t>(doc, "prime");
  if (prime < 3 || !is_odd_prime(static_cast<std::uint32_t>(prime)))
    throw std::invalid_argument("prime must be an odd prime");
  const auto gens_doc = field<Json>(doc, "generators");
  if (!gens_doc.is_array()) throw std::invalid_argument("generators must be an array");
  std::vector<GeneratorSpec> gens;
  for (const auto& g : gens_doc)
    gens.push_back({field<std::string>(g, "name"), {field<std::int64_t>(g, "s"), field<std::int64_t>(g, "t")},
                    parse_domain(field<std::string>(g, "domain"))});
  auto coefficients = CoefficientField::prime_field;
  if (doc.contains("coefficients")) {
    const auto c = field<std::string>(doc, "coefficients");
    if (c == "extension") coefficients = CoefficientField::extension_field;
    else if (c != "prime") throw std::invalid_argument("coefficients must be 'prime' or 'extension'");
  }
  std::optional<std::string> localizing;
  if (doc.contains("localizing")) localizing = field<std::string>(doc, "localizing");
  return AlgebraPresentation(static_cast<std::uint32_t>(prime), std::move(gens), coefficients, localizing);
}

Json to_json(const AlgebraPresentation& pres, const DifferentialRule& rule) {
  Json target = Json::array();
  for (const auto& [m, c] : rule.target.terms()) target.push_back({{"coefficient", c}, {"monomial", monomial_json(pres, m)}});
  return {{"page", rule.page}, {"source", monomial_json(pres, rule.source)}, {"target", target}};
}

DifferentialRule rule_from_json(const AlgebraPresentation& pres, const Json& doc) {
  DifferentialRule rule{field<int>(doc, "page"), monomial_from_json(pres, field<Json>(doc, "source")), {}};
  const auto target = field<Json>(doc, "target");
  if (!target.is_array()) throw std::invalid_argument("target must be an array of terms");
  for (const auto& term : target)
    rule.target.add_term(pres.field(), monomial_from_json(pres, field<Json>(term, "monomial")),
                         pres.field().reduce(field<std::int64_t>(term, "coefficient")));
  return rule;
}

Json to_json(const PageWindow& w) {
  return {{"s_min", w.s_min}, {"s_max", w.s_max}, {"t_min", w.t_min}, {"t_max", w.t_max},
          {"margin", w.margin}, {"lower_margin", w.lower_margin}};
}

PageWindow window_from_json(const Json& doc) {
  return {field<std::int64_t>(doc, "s_min"), field<std::int64_t>(doc, "s_max"), field<std::int64_t>(doc, "t_min"),
          field<std::int64_t>(doc, "t_max"), field<int>(doc, "margin"),         field<int>(doc, "lower_margin")};
}

Json to_json(const RangeBound& b) {
  return {{"page", b.page}, {"onto_from", threshold_json(b.onto_from)}, {"iso_from", threshold_json(b.iso_from)}};
}

Json to_json(const VanishingLine& v) {
  Json trace = Json::array();
  for (const auto& b : v.trace) trace.push_back(to_json(b));
  return {{"prime", v.p}, {"group", to_string(v.group)}, {"vcd", v.vcd}, {"page", v.page}, {"line", v.line},
          {"trace", trace}};
}

Json to_json(const PermanentCycleFilter& f) {
  Json trace = Json::array();
  for (const auto& s : f.trace) trace.push_back({{"t", s.t}, {"kept", s.kept}, {"reason", s.reason}});
  Json late = Json::array();
  for (const auto& r : f.late_targets.rows)
    late.push_back({{"t", r.t}, {"classes", r.classes}, {"hit", r.hit}, {"target_shapes", r.target_shapes}});
  return {{"prime", f.p},
          {"group", to_string(f.group)},
          {"survivors", f.survivors},
          {"trace", trace},
          {"late_targets", {{"holds", f.late_targets.holds}, {"rows", late}}}};
}

Json to_json(const PicardFiltrationReport& r) {
  Json bounds = Json::array();
  for (const auto& b : r.bounds) {
    Json entry{{"degree", b.degree}};
    entry["dimension"] = b.dimension ? Json(*b.dimension) : Json(nullptr);
    entry["bound"] = b.dimension ? Json(std::to_string(r.p) + "^" + std::to_string(*b.dimension)) : Json("unknown");
    entry["description"] = b.description;
    bounds.push_back(std::move(entry));
  }
  return {{"group", to_string(r.group)}, {"prime", r.p},       {"vcd", r.vcd},
          {"degrees", r.degrees},        {"bounds", bounds}, {"notes", r.notes}};
}

}  // namespace tatess
