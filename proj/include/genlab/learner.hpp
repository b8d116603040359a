#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "genlab/divergences.hpp"
#include "genlab/space.hpp"

namespace genlab {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

// A finite learning problem: instance set Z, hypothesis metric space W,
// nonnegative loss matrix indexed [hypothesis][instance], data distribution
// over Z, and the i.i.d. sample size n.
class LearningProblem {
 public:
  LearningProblem(std::vector<std::string> instances, FiniteMetricSpace hypotheses,
                  Matrix loss, Distribution data_dist, int n);

  std::size_t num_instances() const { return instances_.size(); }
  std::size_t num_hypotheses() const { return hypotheses_.size(); }
  const std::vector<std::string>& instances() const { return instances_; }
  const FiniteMetricSpace& hypotheses() const { return hypotheses_; }
  double loss(std::size_t w, std::size_t z) const { return loss_(w, z); }
  const Matrix& loss_matrix() const { return loss_; }
  const Distribution& data_dist() const { return data_dist_; }
  int sample_size() const { return n_; }

 private:
  std::vector<std::string> instances_;
  FiniteMetricSpace hypotheses_;
  Matrix loss_;
  Distribution data_dist_;
  int n_;
};

// A learning algorithm as a Markov kernel: ordered sample tuple (instance
// indices) to a distribution over hypotheses. Kernel functions must be pure.
class AlgorithmKernel {
 public:
  using Fn = std::function<Distribution(std::span<const int>)>;

  AlgorithmKernel(std::string name, bool permutation_invariant, Fn fn)
      : name_(std::move(name)),
        permutation_invariant_(permutation_invariant),
        fn_(std::move(fn)) {}

  const std::string& name() const { return name_; }
  bool permutation_invariant() const { return permutation_invariant_; }
  Distribution operator()(std::span<const int> sample) const { return fn_(sample); }

 private:
  std::string name_;
  bool permutation_invariant_;
  Fn fn_;
};

namespace kernels {

// Ignores the sample entirely; uniform over hypotheses unless given output.
AlgorithmKernel constant(const LearningProblem& problem,
                         std::optional<Distribution> output = std::nullopt);

// n = 1 echo: sample (z) maps to the point mass at hypothesis index z.
// Requires at least as many hypotheses as instances.
AlgorithmKernel memorizer(const LearningProblem& problem);

// Deterministic empirical risk minimization, lowest-index tie-breaking.
AlgorithmKernel erm(const LearningProblem& problem);

// Gibbs posterior: kernel(S)(w) proportional to exp(-beta * n * R_S(w)).
AlgorithmKernel gibbs(const LearningProblem& problem, double beta);

}  // namespace kernels

// All |Z|^n ordered tuples with their product-measure weights.
struct DatasetEnumeration {
  std::vector<std::vector<int>> tuples;
  std::vector<double> weights;
};

DatasetEnumeration enumerate_datasets(const LearningProblem& problem,
                                      std::size_t cap = kDefaultEnumerationCap);

// Every distribution derived from (problem, kernel) by exact enumeration.
struct DerivedDistributions {
  Distribution p_w;                        // hypothesis marginal
  JointDistribution p_wz;                  // (W, z) for a uniform training example
  std::vector<Distribution> p_w_given_z;   // per-instance conditionals
  JointDistribution p_sn_w;                // (dataset, W) joint
  InfoValue mi_w_sn;                       // I(W; S_n)
  InfoValue mi_w_z;                        // I(W; z)
};

DerivedDistributions derive_distributions(const LearningProblem& problem,
                                          const AlgorithmKernel& kernel,
                                          std::size_t cap = kDefaultEnumerationCap);

// The two algebraically equal routes to the expected generalization error:
// direct = E[R(W)] - E[R_Sn(W)] over the dataset enumeration, and
// via_conditionals = sum_z sum_w loss(w,z) * (pW(w) D(z) - pWz(w,z)).
struct GenErrorRoutes {
  double direct;
  double via_conditionals;
};

GenErrorRoutes gen_error_routes(const LearningProblem& problem,
                                const AlgorithmKernel& kernel,
                                std::size_t cap = kDefaultEnumerationCap);

// Signed expected generalization error; asserts the two routes agree
// within 1e-10.
double expected_generalization_error(const LearningProblem& problem,
                                     const AlgorithmKernel& kernel,
                                     std::size_t cap = kDefaultEnumerationCap);

// sum_z D(z) * W1(P_W, P_{W|z}).
double algorithmic_transport_cost(const LearningProblem& problem,
                                  const DerivedDistributions& derived);
double algorithmic_transport_cost(const LearningProblem& problem,
                                  const AlgorithmKernel& kernel,
                                  std::size_t cap = kDefaultEnumerationCap);

// Same averaging with the bounded-Lipschitz distance in place of W1.
double expected_bl_cost(const LearningProblem& problem,
                        const DerivedDistributions& derived);
double expected_bl_cost(const LearningProblem& problem, const AlgorithmKernel& kernel,
                        std::size_t cap = kDefaultEnumerationCap);

// Loss regularity constants: K = smallest Lipschitz constant of w -> loss(w,z)
// over all z; F = sup loss; G = max(F, K) (the bounded-Lipschitz norm);
// diam = hypothesis space diameter.
struct ProblemConstants {
  double lipschitz;
  double sup_loss;
  double bl_norm;
  double diam;
};

// Throws ZeroDistance when distinct hypotheses at distance zero carry
// different losses (K is infinite).
ProblemConstants problem_constants(const LearningProblem& problem);

// Non-throwing variant: lipschitz and bl_norm become +infinity instead.
ProblemConstants problem_constants_allow_infinite(const LearningProblem& problem);

struct McEstimate {
  double estimate;
  double stderr_value;
};

// Monte Carlo fallback for the transport cost when enumeration is infeasible.
// Per trial: draw z ~ D, build the marginal estimate from samples_per_trial
// kernel outputs on S ~ D^n and the conditional estimate from kernel outputs
// on S ~ P(.|z) (position-insertion sampler), then average W1 across trials.
// Deterministic for a fixed seed; trial streams are counter-split.
McEstimate mc_estimate_transport_cost(const LearningProblem& problem,
                                      const AlgorithmKernel& kernel,
                                      std::uint64_t seed, int trials,
                                      int samples_per_trial = 32);

// Exhaustive permutation-invariance check; feasible at n <= 4 desk scale.
bool check_permutation_invariance(const LearningProblem& problem,
                                  const AlgorithmKernel& kernel,
                                  std::size_t cap = kDefaultEnumerationCap);

}  // namespace genlab
