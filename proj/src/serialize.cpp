#include "k3trc/serialize.hpp"

#include <sstream>

namespace k3trc {

namespace {

Integer parse_integer_field(const Json& v, const char* name) {
  try {
    if (v.is_number_integer()) return Integer(static_cast<long>(v.get<long long>()));
    if (v.is_string()) {
      Rational r = parse_rational(v.get<std::string>());
      if (r.get_den() != 1) throw MalformedInput(std::string(name) + " must be an integer");
      return r.get_num();
    }
  } catch (const ParseError& e) {
    throw MalformedInput(std::string(name) + ": " + e.what());
  }
  throw MalformedInput(std::string(name) + " must be an integer or a decimal string");
}

}  // namespace

WeilPolynomial parse_document(const Json& doc) {
  if (doc.is_object() && doc.contains("result") && doc.contains("command")) return parse_document(doc["result"]);
  if (!doc.is_object()) throw MalformedInput("document must be a JSON object");
  for (const char* k : {"q", "p", "coefficients"})
    if (!doc.contains(k)) throw MalformedInput(std::string("document is missing \"") + k + "\"");
  const Json& cs = doc["coefficients"];
  if (!cs.is_array() || cs.empty()) throw MalformedInput("coefficients must be a nonempty array");
  std::vector<std::string> strs;
  for (const auto& c : cs) {
    if (!c.is_string()) throw MalformedInput("coefficients must be rational strings");
    strs.push_back(c.get<std::string>());
  }
  try {
    return make_weil(parse_poly(strs), parse_integer_field(doc["p"], "p"), parse_integer_field(doc["q"], "q"));
  } catch (const ParseError& e) {
    throw MalformedInput(e.what());
  } catch (const StructuralError& e) {
    throw MalformedInput(e.what());
  }
}

Json to_document(const WeilPolynomial& L) {
  Json doc;
  doc["q"] = to_string(L.q);
  doc["p"] = L.p.get_si();
  doc["coefficients"] = coefficient_strings(L.poly);
  return doc;
}

Json to_json(const AdmissibilityReport& r) {
  Json j;
  j["admissible"] = r.overall;
  Json conds = Json::array();
  for (const auto& c : r.conditions) conds.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
  j["conditions"] = conds;
  if (const Condition* f = r.first_failure(); f && !r.overall) j["failing_condition"] = f->name;
  return j;
}

Json to_json(const InvariantReport& r) {
  Json j;
  j["d"] = r.d;
  j["e"] = r.e;
  if (r.h)
    j["h"] = *r.h;
  else
    j["h"] = "infinity";
  return j;
}

Json to_json(const Relation& r) { return {{"f", r.f}, {"certification", to_string(r.level)}}; }

Json to_json(const GammaRankReport& r) {
  Json j;
  j["d"] = r.d;
  j["rank_lower"] = r.rank_lower;
  j["rank_upper"] = r.rank_upper;
  j["stable_d"] = r.stable_d;
  j["method"] = r.method;
  Json rels = Json::array();
  for (const auto& rel : r.relations.basis) rels.push_back(to_json(rel));
  j["relations"] = rels;
  if (r.galois_order) j["galois_order"] = *r.galois_order;
  if (r.valuation_matrix) {
    Json rows = Json::array();
    for (int i = 0; i < r.valuation_matrix->rows(); ++i) {
      Json row = Json::array();
      for (int k = 0; k < r.valuation_matrix->cols(); ++k) row.push_back((*r.valuation_matrix)(i, k));
      rows.push_back(row);
    }
    j["valuation_rows_times_h"] = rows;
  }
  return j;
}

Json to_json(const NeatnessVerdict& v) {
  Json j;
  j["verdict"] = to_string(v.kind);
  if (!v.criterion.empty()) j["criterion"] = v.criterion;
  if (v.relation) j["relation"] = to_json(*v.relation);
  j["rank"] = to_json(v.rank);
  Json h = Json::array();
  for (const auto& rel : v.heuristic) h.push_back(to_json(rel));
  j["heuristic_relations"] = h;
  return j;
}

Json to_json(const RelationCheck& c) {
  Json j;
  j["truth"] = to_string(c.truth);
  j["method"] = c.method;
  if (c.truth == Truth::Undecided) {
    std::ostringstream os;
    os.precision(6);
    os << c.phase_distance;
    j["phase_distance"] = os.str();
    j["bits"] = c.bits;
  }
  return j;
}

Json to_json(const SignatureReport& s) {
  auto pair = [](const SignaturePair& p) { return Json::array({p.positive, p.negative}); };
  Json j;
  j["rho"] = s.rho;
  j["d"] = s.d;
  j["e"] = s.e;
  j["rho1"] = s.rho1;
  j["rho2"] = s.rho2;
  j["parts"] = {{"M", pair(s.m_part)}, {"algebraic", pair(s.algebraic)}, {"transcendental", pair(s.transcendental)}};
  j["total"] = pair(s.total);
  return j;
}

Json to_json(const GramReport& g) {
  Json j;
  j["n"] = g.n;
  j["dimension"] = g.dimension();
  j["positive_definite"] = g.positive_definite;
  Json minors = Json::array();
  for (const auto& m : g.minors) minors.push_back(to_string(m));
  j["leading_principal_minors"] = minors;
  j["tuples"] = g.tuples;
  return j;
}

std::string gram_csv(const GramReport& g) {
  QMatrix m = g.dense();
  std::ostringstream os;
  for (int i = 0; i < m.rows(); ++i) {
    for (int k = 0; k < m.cols(); ++k) os << (k ? "," : "") << to_string(m(i, k));
    os << '\n';
  }
  return os.str();
}

}  // namespace k3trc
