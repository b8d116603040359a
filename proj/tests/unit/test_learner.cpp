#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>

#include "genlab/errors.hpp"
#include "genlab/learner.hpp"
#include "genlab/random_instances.hpp"
#include "genlab/transport.hpp"

using namespace genlab;

namespace {

// The memorizer tightness workhorse: Z = W = {0, 1}, 0-1 loss, uniform data,
// n = 1, hypothesis distance d.
LearningProblem memorizer_problem(double d) {
  Matrix dist(2, 2, 0.0);
  dist(0, 1) = d;
  dist(1, 0) = d;
  Matrix loss = Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  return LearningProblem({"z0", "z1"}, FiniteMetricSpace({"w0", "w1"}, dist),
                         std::move(loss), Distribution({0.5, 0.5}), 1);
}

// Independent oracle: recomputes P_W, P_{W,z} and the (S_n, W) joint by
// recursive descent over datasets instead of the library's odometer walk.
struct OracleDistributions {
  std::map<int, double> p_w;
  std::map<std::pair<int, int>, double> p_wz;  // (w, z)
  std::vector<std::pair<std::vector<int>, double>> datasets;
};

OracleDistributions oracle_derive(const LearningProblem& problem,
                                  const AlgorithmKernel& kernel) {
  OracleDistributions oracle;
  std::vector<int> current;
  const std::function<void(double)> descend = [&](double weight) {
    if (static_cast<int>(current.size()) == problem.sample_size()) {
      oracle.datasets.emplace_back(current, weight);
      const Distribution out = kernel(current);
      for (std::size_t w = 0; w < out.size(); ++w) {
        oracle.p_w[static_cast<int>(w)] += weight * out[w];
        for (int z : current) {
          oracle.p_wz[{static_cast<int>(w), z}] +=
              weight * out[w] / problem.sample_size();
        }
      }
      return;
    }
    for (std::size_t z = 0; z < problem.num_instances(); ++z) {
      current.push_back(static_cast<int>(z));
      descend(weight * problem.data_dist()[z]);
      current.pop_back();
    }
  };
  descend(1.0);
  return oracle;
}

}  // namespace

TEST_CASE("dataset enumeration: weights and counts") {
  {
    Matrix loss(2, 2, 0.0);
    LearningProblem problem({"a", "b"}, two_point_space(1.0), loss,
                            Distribution({0.5, 0.5}), 2);
    const DatasetEnumeration data = enumerate_datasets(problem);
    REQUIRE(data.tuples.size() == 4);
    for (double w : data.weights) CHECK(w == doctest::Approx(0.25).epsilon(1e-15));
  }
  {
    Matrix loss(2, 2, 0.0);
    LearningProblem problem({"a", "b"}, two_point_space(1.0), loss,
                            Distribution({0.25, 0.75}), 1);
    const DatasetEnumeration data = enumerate_datasets(problem);
    REQUIRE(data.tuples.size() == 2);
    CHECK(data.weights[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(data.weights[1] == doctest::Approx(0.75).epsilon(1e-15));
  }
  {
    Matrix loss(2, 2, 0.0);
    LearningProblem problem({"a", "b"}, two_point_space(1.0), loss,
                            Distribution({0.25, 0.75}), 2);
    const DatasetEnumeration data = enumerate_datasets(problem);
    REQUIRE(data.tuples.size() == 4);
    CHECK(data.weights[0] == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(data.weights[1] == doctest::Approx(0.1875).epsilon(1e-15));
    CHECK(data.weights[2] == doctest::Approx(0.1875).epsilon(1e-15));
    CHECK(data.weights[3] == doctest::Approx(0.5625).epsilon(1e-15));
  }
}

TEST_CASE("enumeration weights always sum to one") {
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    SplitMix64 rng = trial_stream(139, trial);
    const LearningProblem problem = random_problem(rng);
    const DatasetEnumeration data = enumerate_datasets(problem);
    CHECK(std::abs(compensated_total(data.weights) - 1.0) <= 1e-12);
  }
}

TEST_CASE("enumeration cap is enforced") {
  Matrix loss(2, 3, 0.0);
  LearningProblem problem({"a", "b", "c"}, two_point_space(1.0), loss,
                          Distribution({0.3, 0.3, 0.4}), 4);
  CHECK_THROWS_AS(enumerate_datasets(problem, /*cap=*/80), EnumerationCapExceeded);
  CHECK_NOTHROW(enumerate_datasets(problem, /*cap=*/81));
}

TEST_CASE("constant kernel derives an independent joint") {
  SplitMix64 rng(67);
  const LearningProblem problem = random_problem(rng);
  const AlgorithmKernel kernel = kernels::constant(problem);
  const DerivedDistributions derived = derive_distributions(problem, kernel);
  CHECK(derived.mi_w_sn.value <= 1e-12);
  CHECK(derived.mi_w_z.value <= 1e-12);
  for (std::size_t z = 0; z < problem.num_instances(); ++z) {
    for (std::size_t w = 0; w < problem.num_hypotheses(); ++w) {
      CHECK(derived.p_wz.at(w, z) ==
            doctest::Approx(derived.p_w[w] * problem.data_dist()[z]).epsilon(1e-12));
    }
  }
}

TEST_CASE("memorizer at n = 1 produces the perfectly correlated joint") {
  const LearningProblem problem = memorizer_problem(1.0);
  const AlgorithmKernel kernel = kernels::memorizer(problem);
  const DerivedDistributions derived = derive_distributions(problem, kernel);
  CHECK(derived.mi_w_sn.value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(derived.mi_w_z.value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(derived.p_wz.at(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(derived.p_wz.at(0, 1) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("derived distributions match the recursive oracle") {
  for (std::uint64_t trial = 0; trial < 12; ++trial) {
    const SweepCase sweep = sweep_case(71, trial);
    const DerivedDistributions derived = derive_distributions(sweep.problem, sweep.kernel);
    const OracleDistributions oracle = oracle_derive(sweep.problem, sweep.kernel);
    for (std::size_t w = 0; w < sweep.problem.num_hypotheses(); ++w) {
      CHECK(derived.p_w[w] ==
            doctest::Approx(oracle.p_w.at(static_cast<int>(w))).epsilon(1e-12));
      for (std::size_t z = 0; z < sweep.problem.num_instances(); ++z) {
        const auto it = oracle.p_wz.find({static_cast<int>(w), static_cast<int>(z)});
        const double expected = it == oracle.p_wz.end() ? 0.0 : it->second;
        CHECK(derived.p_wz.at(w, z) == doctest::Approx(expected).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("marginal consistency of the derived distributions") {
  for (std::uint64_t trial = 0; trial < 18; ++trial) {
    const SweepCase sweep = sweep_case(73, trial);
    const DerivedDistributions derived = derive_distributions(sweep.problem, sweep.kernel);

    // Column marginal of P_{W,z} is the data distribution.
    const Distribution col = derived.p_wz.col_marginal();
    for (std::size_t z = 0; z < sweep.problem.num_instances(); ++z) {
      CHECK(std::abs(col[z] - sweep.problem.data_dist()[z]) <= 1e-12);
    }
    // P_W agrees across the two joints.
    const Distribution from_wz = derived.p_wz.row_marginal();
    const Distribution from_snw = derived.p_sn_w.col_marginal();
    for (std::size_t w = 0; w < sweep.problem.num_hypotheses(); ++w) {
      CHECK(std::abs(from_wz[w] - derived.p_w[w]) <= 1e-12);
      CHECK(std::abs(from_snw[w] - derived.p_w[w]) <= 1e-12);
    }
  }
}

TEST_CASE("generalization error: constant, memorizer, constant-loss cases") {
  {
    SplitMix64 rng(79);
    const LearningProblem problem = random_problem(rng);
    CHECK(std::abs(expected_generalization_error(problem, kernels::constant(problem))) <=
          1e-12);
  }
  {
    const LearningProblem problem = memorizer_problem(1.0);
    CHECK(expected_generalization_error(problem, kernels::memorizer(problem)) ==
          doctest::Approx(0.5).epsilon(1e-12));
  }
  {
    // Constant loss c: population and empirical risks coincide pathwise.
    Matrix loss(2, 2, 3.7);
    const LearningProblem problem({"a", "b"}, two_point_space(1.0), loss,
                                  Distribution({0.25, 0.75}), 2);
    CHECK(std::abs(expected_generalization_error(problem, kernels::erm(problem))) <=
          1e-12);
  }
}

TEST_CASE("the two generalization error routes agree everywhere") {
  for (std::uint64_t trial = 0; trial < 24; ++trial) {
    const SweepCase sweep = sweep_case(83, trial);
    const GenErrorRoutes routes = gen_error_routes(sweep.problem, sweep.kernel);
    CHECK(std::abs(routes.direct - routes.via_conditionals) <= 1e-10);
  }
}

TEST_CASE("algorithmic transport cost: constant and memorizer") {
  {
    SplitMix64 rng(89);
    const LearningProblem problem = random_problem(rng);
    CHECK(algorithmic_transport_cost(problem, kernels::constant(problem)) <= 1e-12);
  }
  {
    const LearningProblem problem = memorizer_problem(1.0);
    CHECK(algorithmic_transport_cost(problem, kernels::memorizer(problem)) ==
          doctest::Approx(0.5).epsilon(1e-10));
  }
}

TEST_CASE("expected BL cost on the memorizer, both metrics") {
  {
    const LearningProblem problem = memorizer_problem(1.0);
    CHECK(expected_bl_cost(problem, kernels::memorizer(problem)) ==
          doctest::Approx(0.5).epsilon(1e-9));
  }
  {
    // Far-apart hypotheses: BL caps at 2 TV = 1.
    const LearningProblem problem = memorizer_problem(3.0);
    CHECK(expected_bl_cost(problem, kernels::memorizer(problem)) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("problem constants") {
  {
    const ProblemConstants c = problem_constants(memorizer_problem(1.0));
    CHECK(c.lipschitz == doctest::Approx(1.0));
    CHECK(c.sup_loss == doctest::Approx(1.0));
    CHECK(c.bl_norm == doctest::Approx(1.0));
    CHECK(c.diam == doctest::Approx(1.0));
  }
  {
    Matrix loss(2, 2, 2.5);
    const LearningProblem problem({"a", "b"}, two_point_space(1.0), loss,
                                  Distribution({0.5, 0.5}), 1);
    const ProblemConstants c = problem_constants(problem);
    CHECK(c.lipschitz == 0.0);
    CHECK(c.sup_loss == doctest::Approx(2.5));
  }
  {
    const ProblemConstants c = problem_constants(memorizer_problem(0.5));
    CHECK(c.lipschitz == doctest::Approx(2.0));
  }
  {
    // Distinct hypotheses at distance zero with different losses.
    Matrix dist(2, 2, 0.0);
    Matrix loss = Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const LearningProblem problem({"a", "b"},
                                  FiniteMetricSpace({"w0", "w1"}, dist), loss,
                                  Distribution({0.5, 0.5}), 1);
    CHECK_THROWS_AS(problem_constants(problem), ZeroDistance);
    CHECK(std::isinf(problem_constants_allow_infinite(problem).lipschitz));
  }
}

TEST_CASE("chain rule: n * I(W;z) <= I(W;S_n)") {
  for (std::uint64_t trial = 0; trial < 24; ++trial) {
    const SweepCase sweep = sweep_case(97, trial);
    const DerivedDistributions derived = derive_distributions(sweep.problem, sweep.kernel);
    CHECK(sweep.problem.sample_size() * derived.mi_w_z.value <=
          derived.mi_w_sn.value + 1e-9);
  }
}

TEST_CASE("expected conditional TV equals the joint-product TV") {
  for (std::uint64_t trial = 0; trial < 24; ++trial) {
    const SweepCase sweep = sweep_case(101, trial);
    const DerivedDistributions derived = derive_distributions(sweep.problem, sweep.kernel);
    NeumaierSum lhs;
    for (std::size_t z = 0; z < sweep.problem.num_instances(); ++z) {
      if (sweep.problem.data_dist()[z] <= 0.0) continue;
      lhs.add(sweep.problem.data_dist()[z] *
              total_variation(derived.p_w, derived.p_w_given_z[z]));
    }
    // Flattened TV between P_W x D and P_{W,z}.
    std::vector<double> product, joint;
    for (std::size_t w = 0; w < sweep.problem.num_hypotheses(); ++w) {
      for (std::size_t z = 0; z < sweep.problem.num_instances(); ++z) {
        product.push_back(derived.p_w[w] * sweep.problem.data_dist()[z]);
        joint.push_back(derived.p_wz.at(w, z));
      }
    }
    const double rhs = total_variation(Distribution(product), Distribution(joint));
    CHECK(std::abs(lhs.value() - rhs) <= 1e-10);
  }
}

TEST_CASE("declared permutation invariance verified exhaustively") {
  for (std::uint64_t trial = 0; trial < 8; ++trial) {
    const SweepCase sweep = sweep_case(103, trial);
    if (sweep.problem.sample_size() > 4) continue;
    CHECK(sweep.kernel.permutation_invariant());
    CHECK(check_permutation_invariance(sweep.problem, sweep.kernel));
  }
}

TEST_CASE("monte carlo transport cost estimate") {
  {
    SplitMix64 rng(107);
    const LearningProblem problem = random_problem(rng);
    const McEstimate est =
        mc_estimate_transport_cost(problem, kernels::constant(problem), 42, 50);
    CHECK(est.estimate == 0.0);
    CHECK(est.stderr_value == 0.0);
  }
  {
    const LearningProblem problem = memorizer_problem(1.0);
    const McEstimate est =
        mc_estimate_transport_cost(problem, kernels::memorizer(problem), 42, 10000);
    CHECK(est.stderr_value > 0.0);
    CHECK(std::abs(est.estimate - 0.5) <= 3.0 * est.stderr_value);
  }
  {
    const LearningProblem problem = memorizer_problem(1.0);
    CHECK_THROWS_AS(
        mc_estimate_transport_cost(problem, kernels::memorizer(problem), 42, 1),
        UsageError);
  }
}

TEST_CASE("memorizer construction preconditions") {
  Matrix loss(2, 3, 0.0);
  const LearningProblem wide({"a", "b", "c"}, two_point_space(1.0), loss,
                             Distribution({0.3, 0.3, 0.4}), 1);
  CHECK_THROWS_AS(kernels::memorizer(wide), DimensionMismatch);

  const LearningProblem n2 = [] {
    Matrix l(2, 2, 0.0);
    return LearningProblem({"a", "b"}, two_point_space(1.0), l,
                           Distribution({0.5, 0.5}), 2);
  }();
  CHECK_THROWS_AS(kernels::memorizer(n2), DimensionMismatch);
}
