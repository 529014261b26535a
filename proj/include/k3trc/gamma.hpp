#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3trc/k3weil.hpp"
#include "k3trc/linalg.hpp"
#include "k3trc/mproots.hpp"

namespace k3trc {

enum class Certification { Certified, Heuristic };
const char* to_string(Certification c);

// Exponent vector over the distinct roots alpha_1..alpha_2d of Q. alpha_1..alpha_d
// are the roots with argument in (0, pi) in increasing order, alpha_{i+d} their conjugates.
struct Relation {
  std::vector<long> f;
  Certification level = Certification::Heuristic;
  friend bool operator==(const Relation&, const Relation&) = default;
};

struct RelationLattice {
  std::vector<Relation> basis;
};

struct EffortPolicy {
  unsigned start_bits = 256;
  unsigned max_bits = 8192;
  // Largest d handled by the exact splitting-field layer.
  int exact_max_d = 3;
  // Largest Galois group order accepted by that layer.
  std::size_t max_group = 48;
  unsigned long seed = 0x6b33;

  static EffortPolicy named(const std::string& level);
};

struct GammaRankReport {
  int d = 0;
  int rank_lower = 0;
  int rank_upper = 0;
  int stable_d = 0;
  std::string method;
  RelationLattice relations;
  // Rows nu_q(sigma(alpha_i)) * h for i <= d when the exact layer ran.
  std::optional<Matrix<long>> valuation_matrix;
  std::optional<std::size_t> galois_order;
};

GammaRankReport gamma_rank(const WeilPolynomial& L, const EffortPolicy& effort = {});

enum class VerdictKind { Neat, NotNeat, Unknown };
const char* to_string(VerdictKind k);

struct NeatnessVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  // "trivial", "h=e", "d<=2" or "full-rank valuation matrix" for Neat.
  std::string criterion;
  // Certified violating relation for NotNeat, scaled so that the product is exactly 1.
  std::optional<Relation> relation;
  GammaRankReport rank;
  std::vector<Relation> heuristic;
};

NeatnessVerdict check_neat(const WeilPolynomial& L, const EffortPolicy& effort = {});

enum class Truth { CertifiedTrue, CertifiedFalse, Undecided };
const char* to_string(Truth t);

struct RelationCheck {
  Truth truth = Truth::Undecided;
  std::string method;
  // Distance of sum f_i arg(alpha_i) / 2pi to the nearest rational of small denominator.
  double phase_distance = 0;
  unsigned bits = 0;
};

RelationCheck verify_relation(const WeilPolynomial& L, const std::vector<long>& f, const EffortPolicy& effort = {});

// Distinct roots of Q in the labeling described above, at the current precision.
std::vector<Complex> labeled_roots(const Poly& Q);

// Smallest m with d(X over F_{q^m}) minimal, and that minimum.
struct StableBaseChange {
  unsigned long m = 1;
  int d = 0;
  // Certified relations alpha_i^n = alpha_j^n behind the drop from d to the stable value.
  std::vector<Relation> merges;
};
StableBaseChange stable_base_change(const WeilPolynomial& L, const EffortPolicy& effort = {});

}  // namespace k3trc
