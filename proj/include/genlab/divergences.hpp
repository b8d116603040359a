#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "genlab/space.hpp"

namespace genlab {

// Extended nonnegative information quantity in nats. +infinity is a value,
// not an error: it arises exactly from absolute-continuity failure and
// renders downstream bounds vacuous rather than invalid.
struct InfoValue {
  double value = 0.0;
  static constexpr bool nats = true;

  bool infinite() const { return std::isinf(value); }
};

// sup_A |P(A) - Q(A)| = half the L1 distance; in [0, 1].
double total_variation(const Distribution& p, const Distribution& q);

// (1/(2F)) max over |f| <= F of sum f(x)(p(x) - q(x)); the maximizer is
// f = F * sign(p - q), so the value is F-invariant and equals total_variation.
double tv_dual(const Distribution& p, const Distribution& q, double f_bound);

// sum_{p_i > 0} p_i ln(p_i / q_i); +infinity when some p_i > 0 has q_i = 0.
InfoValue kl(const Distribution& p, const Distribution& q);

// KL between the joint and the product of its marginals.
InfoValue mutual_information(const JointDistribution& joint);

// [sum (sqrt(p_i) - sqrt(q_i))^2]^(1/2), unnormalized; range [0, sqrt(2)].
double hellinger(const Distribution& p, const Distribution& q);

// sum (p_i - q_i)^2 / q_i with 0/0 terms contributing 0.
InfoValue chi_squared(const Distribution& p, const Distribution& q);

// -sum p_i ln p_i, in nats.
double entropy(const Distribution& p);

// One conditioning slice: the probability of C = c and the joint law of
// (X, Y) given C = c.
struct ConditionalSlice {
  double weight;
  JointDistribution joint;
};

// E_C[ I(X; Y | C = c) ]; slices indexed by the conditioning value.
InfoValue conditional_mutual_information(std::span<const ConditionalSlice> slices);

}  // namespace genlab
