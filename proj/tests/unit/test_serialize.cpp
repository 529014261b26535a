#include "doctest.h"
#include "k3trc/serialize.hpp"

using namespace k3trc;

namespace {
Rational Q(long n, long d = 1) { return make_rational(n, d); }
}  // namespace

TEST_CASE("documents round trip") {
  for (const auto& L : {kummer_transcendental(0, 1, 3), make_weil(Poly{1, Q(-7, 3), Q(17, 9), -1, Q(17, 9), Q(-7, 3), 1}, 3, 9),
                        make_weil(Poly::constant(1), 5, 25)}) {
    Json doc = to_document(L);
    CHECK(parse_document(doc) == L);
    CHECK(parse_document(Json::parse(doc.dump())) == L);
    Json env{{"version", "0.1.0"}, {"command", "kummer"}, {"result", doc}};
    CHECK(parse_document(env) == L);
  }
  auto doc = to_document(kummer_transcendental(0, 1, 3));
  CHECK(doc["coefficients"] == Json::array({"1", "0", "-5/3", "0", "1"}));
  CHECK(doc["q"] == "3");
}

TEST_CASE("q and p accept integers and decimal strings") {
  auto a = parse_document(Json::parse(R"({"q": 9, "p": "3", "coefficients": ["1", "-5/9", "1"]})"));
  CHECK(a.q == 9);
  CHECK(a.p == 3);
  // Canonical form after parsing.
  auto b = parse_document(Json::parse(R"({"q": "3", "p": 3, "coefficients": ["1", "-10/6", "1"]})"));
  CHECK(b.poly[1] == Q(-5, 3));
}

TEST_CASE("malformed documents are rejected") {
  const char* bad[] = {
      R"([1, 2])",
      R"({"q": "3", "p": 3})",
      R"({"q": "3", "p": 3, "coefficients": []})",
      R"({"q": "3", "p": 3, "coefficients": [1, 0, 1]})",
      R"({"q": "3", "p": 3, "coefficients": ["1", "x", "1"]})",
      R"({"q": "3", "p": 3, "coefficients": ["1", "0.5", "1"]})",
      R"({"q": "6", "p": 3, "coefficients": ["1", "0", "1"]})",
      R"({"q": "3/2", "p": 3, "coefficients": ["1", "0", "1"]})",
      R"({"q": "3", "p": 3, "coefficients": ["2", "0", "1"]})",
      R"({"q": "3", "p": 3, "coefficients": ["1", "1/2", "1"]})",
  };
  for (const char* s : bad) CHECK_THROWS_AS(parse_document(Json::parse(s)), MalformedInput);
}

TEST_CASE("reports serialize rationals as strings") {
  auto S = make_weil(Poly{1, Q(-7, 3), Q(17, 9), -1, Q(17, 9), Q(-7, 3), 1}, 3, 9);
  Json v = to_json(check_neat(S));
  CHECK(v.dump().find("NotNeat") != std::string::npos);
  Json inv = to_json(invariants(S));
  CHECK(inv == Json{{"d", 3}, {"e", 1}, {"h", 2}});
  Json g = to_json(tensor_power_gram(EigenModel::of(kummer_transcendental(0, 1, 3)), kummer_transcendental(0, 1, 3), 2));
  CHECK(g["leading_principal_minors"].size() == 4);
  for (const auto& m : g["leading_principal_minors"]) CHECK(m.is_string());
  CHECK(gram_csv(tensor_power_gram(EigenModel::standard(0, 1), make_weil(Poly::constant(1), 3, 3), 2)).size() < 2);
}
