#pragma once

#include <json.hpp>
#include <stdexcept>

#include "k3trc/gamma.hpp"
#include "k3trc/k3weil.hpp"
#include "k3trc/motivesig.hpp"

namespace k3trc {

using Json = nlohmann::ordered_json;

struct MalformedInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// {"q": "<decimal>", "p": <int>, "coefficients": ["1", ...]}; an envelope whose
// result is such a document is accepted as well.
WeilPolynomial parse_document(const Json& doc);
Json to_document(const WeilPolynomial& L);

Json to_json(const AdmissibilityReport& r);
Json to_json(const InvariantReport& r);
Json to_json(const Relation& r);
Json to_json(const GammaRankReport& r);
Json to_json(const NeatnessVerdict& v);
Json to_json(const RelationCheck& c);
Json to_json(const SignatureReport& s);
Json to_json(const GramReport& g);

std::string gram_csv(const GramReport& g);

}  // namespace k3trc
