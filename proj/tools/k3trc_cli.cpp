#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "k3trc/serialize.hpp"

using namespace k3trc;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kMalformed = 1, kNotAdmissible = 2, kUnknown = 3 };

int severity(int code) {
  switch (code) {
    case kOk:
      return 0;
    case kUnknown:
      return 1;
    case kNotAdmissible:
      return 2;
    default:
      return 3;
  }
}

struct Options {
  std::string command;
  std::string input;
  std::string effort = "default";
  unsigned long seed = 0;
  unsigned n = 0;
  std::string f;
  long a1 = 0, a2 = 0;
  std::string q;
  int degree = 0;
  long height = 0;
  long max_examined = 5'000'000;
  std::string cursor;
  int rho = 0, d = 0, e = 0;
  std::string csv;
};

struct Outcome {
  int code = kOk;
  Json result;
  std::string certification;
};

std::vector<long> parse_relation(const std::string& text) {
  std::string cleaned = text;
  for (char& c : cleaned)
    if (c == ',' || c == '[' || c == ']' || c == '(' || c == ')') c = ' ';
  std::istringstream is(cleaned);
  std::vector<long> out;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      throw MalformedInput("relation entry '" + tok + "' is not an integer");
    }
    if (used != tok.size()) throw MalformedInput("relation entry '" + tok + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty()) throw MalformedInput("empty relation vector");
  return out;
}

Outcome not_admissible(const WeilPolynomial& L) {
  auto r = validate_k3_type(L);
  Outcome o{kNotAdmissible, to_json(r), "exact"};
  return o;
}

// Commands that need an admissible polynomial.
Outcome run_on_document(const Options& opt, const WeilPolynomial& L, const EffortPolicy& effort) {
  const std::string& c = opt.command;
  if (c == "validate") {
    auto r = validate_k3_type(L);
    return {r.overall ? kOk : kNotAdmissible, to_json(r), "exact"};
  }
  if (c == "extend") {
    if (opt.n == 0) throw MalformedInput("extend needs --n >= 1");
    return {kOk, to_document(base_change(L, opt.n)), "exact"};
  }
  if (!validate_k3_type(L).overall) return not_admissible(L);
  if (c == "invariants") return {kOk, to_json(invariants(L)), "exact"};
  if (c == "gamma-rank") {
    auto r = gamma_rank(L, effort);
    bool exact = r.rank_lower == r.rank_upper;
    return {exact ? kOk : kUnknown, to_json(r), exact ? "certified" : "bounds"};
  }
  if (c == "neat") {
    auto v = check_neat(L, effort);
    bool known = v.kind != VerdictKind::Unknown;
    return {known ? kOk : kUnknown, to_json(v), known ? "certified" : "bounds"};
  }
  if (c == "verify-relation") {
    auto r = verify_relation(L, parse_relation(opt.f), effort);
    return {r.truth == Truth::Undecided ? kUnknown : kOk, to_json(r), to_string(r.truth)};
  }
  if (c == "tensor-dim") {
    if (opt.n == 0) throw MalformedInput("tensor-dim needs --n >= 1");
    try {
      long dim = invariant_tuple_dimension(L, static_cast<int>(opt.n), effort);
      return {kOk, Json{{"n", opt.n}, {"dimension", dim}}, "certified"};
    } catch (const std::runtime_error& e) {
      return {kUnknown, Json{{"n", opt.n}, {"error", e.what()}}, "unknown"};
    }
  }
  if (c == "gram") {
    if (opt.n == 0) throw MalformedInput("gram needs an even --n");
    auto g = tensor_power_gram(EigenModel::of(L), L, static_cast<int>(opt.n), effort);
    if (!opt.csv.empty()) {
      std::ofstream out(opt.csv);
      if (!out) throw std::runtime_error("cannot write " + opt.csv);
      out << gram_csv(g);
    }
    return {kOk, to_json(g), "exact"};
  }
  throw std::logic_error("unhandled command " + c);
}

Outcome run_standalone(const Options& opt) {
  const std::string& c = opt.command;
  if (c == "kummer") {
    Integer q;
    try {
      q = parse_rational(opt.q).get_num();
    } catch (const ParseError& e) {
      throw MalformedInput(e.what());
    }
    return {kOk, to_document(kummer_transcendental(opt.a1, opt.a2, q)), "exact"};
  }
  if (c == "enumerate") {
    Integer q = parse_rational(opt.q).get_num();
    Json res;
    try {
      auto found = enumerate_candidates(q, opt.degree, opt.height, opt.max_examined, opt.cursor);
      Json arr = Json::array();
      for (auto& L : found) arr.push_back(to_document(L));
      res["candidates"] = arr;
      res["complete"] = true;
    } catch (const ResourceCeiling& e) {
      Json arr = Json::array();
      for (auto& L : e.found) arr.push_back(to_document(L));
      res["candidates"] = arr;
      res["complete"] = false;
      res["cursor"] = e.cursor;
    }
    return {kOk, res, "exact"};
  }
  if (c == "signature") return {kOk, to_json(signature_report(opt.rho, opt.d, opt.e)), "exact"};
  throw std::logic_error("unhandled command " + c);
}

Json input_echo(const Options& opt) {
  Json j;
  const std::string& c = opt.command;
  if (c == "kummer") j = {{"a1", opt.a1}, {"a2", opt.a2}, {"q", opt.q}};
  if (c == "enumerate") j = {{"q", opt.q}, {"degree", opt.degree}, {"height", opt.height}};
  if (c == "signature") j = {{"rho", opt.rho}, {"d", opt.d}, {"e", opt.e}};
  return j;
}

Json envelope(const Options& opt, Json input, const Outcome& o, double ms) {
  Json env;
  env["version"] = kVersion;
  env["command"] = opt.command;
  Json args = Json::object();
  if (opt.n) args["n"] = opt.n;
  if (!opt.f.empty()) args["f"] = opt.f;
  args["effort"] = opt.effort;
  args["seed"] = opt.seed;
  env["arguments"] = args;
  env["input"] = std::move(input);
  env["result"] = o.result;
  env["certification"] = o.certification;
  env["timing"] = {{"milliseconds", ms}};
  return env;
}

bool needs_document(const std::string& c) { return c != "kummer" && c != "enumerate" && c != "signature"; }

int run(const Options& opt) {
  EffortPolicy effort;
  try {
    effort = EffortPolicy::named(opt.effort);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMalformed;
  }
  effort.seed = opt.seed ? opt.seed : effort.seed;

  auto timed = [&](auto&& fn, Json input) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = fn();
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return std::make_pair(o.code, envelope(opt, std::move(input), o, ms));
  };

  try {
    if (!needs_document(opt.command)) {
      auto [code, env] = timed([&] { return run_standalone(opt); }, input_echo(opt));
      std::cout << env.dump(2) << '\n';
      return code;
    }
    std::string text;
    if (opt.input.empty() || opt.input == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
      std::ifstream in(opt.input);
      if (!in) throw MalformedInput("cannot read " + opt.input);
      text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw MalformedInput(std::string("invalid JSON: ") + e.what());
    }
    bool batch = doc.is_array();
    std::vector<Json> docs = batch ? std::vector<Json>(doc.begin(), doc.end()) : std::vector<Json>{doc};
    // Parse everything first so that malformed input never yields partial output.
    std::vector<WeilPolynomial> polys;
    for (const auto& d : docs) polys.push_back(parse_document(d));
    Json out = Json::array();
    int worst = kOk;
    for (const auto& L : polys) {
      auto [code, env] = timed([&] { return run_on_document(opt, L, effort); }, to_document(L));
      if (severity(code) > severity(worst)) worst = code;
      out.push_back(env);
    }
    std::cout << (batch ? out : out[0]).dump(2) << '\n';
    return worst;
  } catch (const MalformedInput& e) {
    std::cerr << "malformed input: " << e.what() << '\n';
    return kMalformed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "malformed input: " << e.what() << '\n';
    return kMalformed;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid request: " << e.what() << '\n';
    return kMalformed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of K3-type transcendental L-functions over finite fields", "k3trc"};
  app.set_version_flag("--version", kVersion);
  Options opt;
  app.add_option("--input", opt.input, "Input document path (default: stdin)");
  app.add_option("--effort", opt.effort, "Effort level for the rank analysis")
      ->check(CLI::IsMember({"low", "default", "high"}));
  app.add_option("--seed", opt.seed, "Recorded seed; results do not depend on it");
  app.require_subcommand(1);

  auto doc_cmd = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("--input", opt.input, "Input document path (default: stdin)");
    return s;
  };
  doc_cmd("validate", "Check the K3-type admissibility conditions");
  doc_cmd("invariants", "Report d, e and h");
  doc_cmd("extend", "Base change to F_{q^n}")->add_option("--n", opt.n, "Extension degree")->required();
  doc_cmd("neat", "Neatness verdict");
  doc_cmd("gamma-rank", "Rank bounds of the eigenvalue group");
  doc_cmd("verify-relation", "Decide whether a relation vector gives a root of unity")
      ->add_option("--f", opt.f, "Exponent vector over the 2d labeled roots")
      ->required();
  doc_cmd("tensor-dim", "Dimension of Frobenius invariants in the n-th tensor power")
      ->add_option("--n", opt.n, "Tensor power")
      ->required();
  auto* gram = doc_cmd("gram", "Gram matrix of the pairing on tensor-power invariants");
  gram->add_option("--n", opt.n, "Even tensor power")->required();
  gram->add_option("--csv", opt.csv, "Also write the Gram matrix as CSV to this path");

  auto* kummer = app.add_subcommand("kummer", "Transcendental L-function of a Kummer surface");
  kummer->add_option("--a1", opt.a1, "Trace of Frobenius of E1")->required();
  kummer->add_option("--a2", opt.a2, "Trace of Frobenius of E2")->required();
  kummer->add_option("--q", opt.q, "Field size")->required();
  auto* en = app.add_subcommand("enumerate", "Enumerate admissible candidates");
  en->add_option("--q", opt.q, "Field size")->required();
  en->add_option("--degree", opt.degree, "Degree")->required();
  en->add_option("--height", opt.height, "Numerator bound")->required();
  en->add_option("--max-examined", opt.max_examined, "Resource ceiling");
  en->add_option("--cursor", opt.cursor, "Resume from a cursor");
  auto* sig = app.add_subcommand("signature", "Signature bookkeeping");
  sig->add_option("--rho", opt.rho, "Picard number")->required();
  sig->add_option("--d", opt.d, "d")->required();
  sig->add_option("--e", opt.e, "e")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }
  opt.command = app.get_subcommands().front()->get_name();
  return run(opt);
}
