#pragma once

#include <optional>
#include <vector>

#include "k3trc/mproots.hpp"
#include "k3trc/rational.hpp"

namespace k3trc {

using IntVector = std::vector<Integer>;

// LLL reduction of the rows of an integer basis with parameter delta, exact arithmetic.
std::vector<IntVector> lll_reduce(std::vector<IntVector> basis, const Rational& delta = make_rational(3, 4));

// Small integer vector c with sum c_i x_i ~ 0, searched with x scaled by 2^scale_bits.
// Returned only when |sum c_i x_i| < 2^-(scale_bits / 2) and max |c_i| <= bound.
std::optional<IntVector> integer_relation(const std::vector<Real>& xs, long scale_bits, const Integer& bound);

}  // namespace k3trc
