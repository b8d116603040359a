#pragma once

#include <optional>
#include <string>
#include <vector>

#include "genlab/learner.hpp"

namespace genlab {

// The four loss/space hypotheses the theorems distinguish.
struct AssumptionSet {
  bool lipschitz = false;
  bool bounded = false;
  bool bounded_lipschitz = false;
  bool bounded_space = false;
};

struct BoundReport {
  std::string name;
  double value = 0.0;  // may be +infinity (vacuous)
  AssumptionSet required;
  AssumptionSet met;
  double true_gen_error = 0.0;
  bool valid = true;  // true_gen_error <= value + 1e-9

  bool applicable() const {
    return (!required.lipschitz || met.lipschitz) &&
           (!required.bounded || met.bounded) &&
           (!required.bounded_lipschitz || met.bounded_lipschitz) &&
           (!required.bounded_space || met.bounded_space);
  }
  bool vacuous() const { return std::isinf(value); }
};

// Metrics between the (W, z) joint and the product P_W x D, and the
// chi-squared divergence of the (S_n, W) joint from the product of its
// marginals; the quantities the conversion bounds consume.
double joint_product_tv(const LearningProblem& problem,
                        const DerivedDistributions& derived);
double joint_product_hellinger(const LearningProblem& problem,
                               const DerivedDistributions& derived);
InfoValue joint_product_chi_squared(const JointDistribution& joint);

// The individual bound formulas. Each takes the exact derived distributions
// and the loss constants, so one enumeration serves every bound.

// K * sum_z D(z) W1(P_W, P_{W|z}).
double transport_cost_bound(const LearningProblem& problem,
                            const DerivedDistributions& derived,
                            const ProblemConstants& constants);

// K * diam * TV(P_W x D, P_{W,z}).
double tv_diameter_bound(const LearningProblem& problem,
                         const DerivedDistributions& derived,
                         const ProblemConstants& constants);

// 2F * TV(P_W x D, P_{W,z}).
double bounded_loss_tv_bound(const LearningProblem& problem,
                             const DerivedDistributions& derived,
                             const ProblemConstants& constants);

// K * diam * sqrt(I(W; S_n) / (2n)).
double mutual_information_bound(const LearningProblem& problem,
                                const DerivedDistributions& derived,
                                const ProblemConstants& constants);

// G * sum_z D(z) BL(P_W, P_{W|z}).
double bl_cost_bound(const LearningProblem& problem,
                     const DerivedDistributions& derived,
                     const ProblemConstants& constants);

// The twelve metric-conversion bounds: three per the Lipschitz family,
// three for bounded losses, six for bounded-Lipschitz losses.
std::vector<BoundReport> corollary_bounds(const LearningProblem& problem,
                                          const DerivedDistributions& derived);
std::vector<BoundReport> corollary_bounds(const LearningProblem& problem,
                                          const AlgorithmKernel& kernel,
                                          std::size_t cap = kDefaultEnumerationCap);

// Binary hypothesis class over a finite feature set: predictions[w][x] in
// {0,1}. Duplicate rows are collapsed (with a warning when GENLAB_LOG is set).
class HypothesisClass {
 public:
  explicit HypothesisClass(Matrix predictions);

  std::size_t num_hypotheses() const { return predictions_.rows(); }
  std::size_t num_points() const { return predictions_.cols(); }
  int predict(std::size_t w, std::size_t x) const {
    return static_cast<int>(predictions_(w, x));
  }
  const Matrix& predictions() const { return predictions_; }

  static HypothesisClass thresholds(std::size_t points);
  static HypothesisClass intervals(std::size_t points);
  static HypothesisClass full(std::size_t points);

 private:
  Matrix predictions_;
};

// Max over point tuples of the number of distinct restriction patterns.
long long growth_function(const HypothesisClass& cls, int n);

// Largest d such that some d-subset of the feature set is shattered.
int vc_dimension(const HypothesisClass& cls, int enumeration_cap = 20);

// 2^n when n < d, else (en/d)^d.
double sauer_bound(int d, long long n);

// sqrt(2 d logplus(ne/d) / n) with logplus(x) = max(1, ln x).
double vc_bound(int d, long long n);

// Binary classification problem built from a hypothesis class: instances are
// (feature, label) pairs, loss is 0-1 on the predicted label, hypotheses sit
// in the discrete metric (all distances 1).
LearningProblem classification_problem(const HypothesisClass& cls,
                                       const Distribution& data_dist, int n);
LearningProblem uniform_classification_problem(const HypothesisClass& cls, int n);

struct EvaluateOptions {
  std::size_t cap = kDefaultEnumerationCap;
  std::optional<HypothesisClass> vc_class;  // adds the VC row when present
};

// One report per bound, shared true generalization error, sorted by name.
std::vector<BoundReport> evaluate_all(const LearningProblem& problem,
                                      const AlgorithmKernel& kernel,
                                      const EvaluateOptions& opts = {});

}  // namespace genlab
