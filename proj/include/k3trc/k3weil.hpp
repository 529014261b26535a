#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "k3trc/padic.hpp"
#include "k3trc/poly.hpp"

namespace k3trc {

struct StructuralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotAdmissible : std::domain_error {
  using std::domain_error::domain_error;
};

// A candidate transcendental L-function prod(1 - alpha_i T) over F_q.
struct WeilPolynomial {
  Poly poly;
  Integer p;
  Integer q;

  int degree() const { return poly.degree(); }
  unsigned long a() const;  // q = p^a
  friend bool operator==(const WeilPolynomial&, const WeilPolynomial&) = default;
};

// Checks the structural invariants: L(0) = 1, q = p^a, denominators powers of p, degree <= 21.
WeilPolynomial make_weil(Poly poly, const Integer& p, const Integer& q);

enum class Status { Pass, Fail, NotEvaluated };
const char* to_string(Status s);

struct Condition {
  std::string name;
  Status status;
  std::string detail;
};

struct AdmissibilityReport {
  std::vector<Condition> conditions;
  bool overall = false;
  // Available once the power-of-irreducible condition holds.
  std::optional<Poly> Q;
  int e = 0;
  std::optional<int> h;

  const Condition& condition(const std::string& name) const;
  // First failing condition, if any.
  const Condition* first_failure() const;
};

AdmissibilityReport validate_k3_type(const WeilPolynomial& L, const PrecisionPolicy& policy = {});

struct InvariantReport {
  int d = 0;
  int e = 1;
  std::optional<int> h;  // nullopt encodes the infinite height of L = 1
  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

InvariantReport invariants(const WeilPolynomial& L, const PrecisionPolicy& policy = {});

// prod(1 - alpha_i^N T) over q^N.
WeilPolynomial base_change(const WeilPolynomial& L, unsigned N);

// L_trc of the Kummer surface of E1 x E2 with traces a1, a2 over F_q.
WeilPolynomial kummer_transcendental(long a1, long a2, const Integer& q);

struct ResourceCeiling : std::runtime_error {
  ResourceCeiling(std::string cursor_state, std::vector<WeilPolynomial> partial)
      : std::runtime_error("candidate enumeration hit its resource ceiling; resume from cursor " + cursor_state),
        cursor(std::move(cursor_state)),
        found(std::move(partial)) {}
  std::string cursor;
  std::vector<WeilPolynomial> found;
};

// Deterministic resumable stream of admissible L with deg = degree and every numerator of
// p^s L bounded by height, where p^s is the minimal clearing denominator.
class CandidateStream {
 public:
  CandidateStream(const Integer& q, int degree, long height, const std::string& cursor = "");

  std::optional<WeilPolynomial> next();
  std::string cursor() const;
  long examined() const { return examined_; }
  // next() stops early once this many candidates have been examined in total.
  void set_limit(long limit) { limit_ = limit; }
  bool limit_reached() const { return limit_ >= 0 && examined_ >= limit_ && !done_; }

 private:
  bool advance();
  bool load_start(unsigned s);

  Integer p_, q_;
  unsigned long a_ = 1;
  int degree_;
  long height_;
  unsigned s_ = 0;
  std::vector<long> num_;   // numerators of c_1..c_{deg/2}
  std::vector<long> bound_;
  bool started_ = false, done_ = false;
  long examined_ = 0;
  long limit_ = -1;
};

std::vector<WeilPolynomial> enumerate_candidates(const Integer& q, int degree, long height,
                                                 long max_examined = 5'000'000, const std::string& cursor = "");

}  // namespace k3trc
