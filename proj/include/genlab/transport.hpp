#pragma once

#include <utility>
#include <vector>

#include "genlab/lp.hpp"
#include "genlab/space.hpp"

namespace genlab {

// An optimal coupling together with its transport cost under the ground
// metric it was solved on.
struct TransportPlan {
  Coupling coupling;
  double cost;
};

struct DualSolution {
  double value;
  std::vector<double> potentials;  // a maximizing 1-Lipschitz function
};

// Exact 1-Wasserstein distance: min over couplings of expected distance.
// Returns the value and a witnessing optimal plan.
std::pair<double, TransportPlan> wasserstein1(const Distribution& p,
                                              const Distribution& q,
                                              const FiniteMetricSpace& space,
                                              LpOptions opts = {});

// Kantorovich dual: max sum f(x)(p(x)-q(x)) over 1-Lipschitz f, solved as an
// independent LP (not derived from the primal) so strong duality is a real
// cross-check.
DualSolution wasserstein1_dual(const Distribution& p, const Distribution& q,
                               const FiniteMetricSpace& space, LpOptions opts = {});

// Coupling form of total variation: min P(X != Y), witness places
// min(p_i, q_i) on the diagonal.
std::pair<double, Coupling> tv_coupling(const Distribution& p, const Distribution& q);

// Smallest alpha with P(B) <= Q(B^alpha) + alpha for every subset B, where
// B^alpha is the closed alpha-fattening. Exhaustive subset enumeration.
double prokhorov(const Distribution& p, const Distribution& q,
                 const FiniteMetricSpace& space, int enumeration_cap = 16);

// max sum f(x)(p(x)-q(x)) over f with |f| <= 1 and Lip(f) <= 1. Value in [0,2].
double bounded_lipschitz(const Distribution& p, const Distribution& q,
                         const FiniteMetricSpace& space, LpOptions opts = {});

}  // namespace genlab
