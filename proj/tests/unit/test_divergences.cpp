#include <doctest.h>

#include <cmath>

#include "genlab/divergences.hpp"
#include "genlab/errors.hpp"
#include "genlab/random_instances.hpp"
#include "genlab/transport.hpp"

using namespace genlab;

TEST_CASE("total variation examples") {
  const Distribution p({0.5, 0.5});
  CHECK(total_variation(p, p) == 0.0);
  CHECK(total_variation(Distribution({1.0, 0.0}), Distribution({0.0, 1.0})) == 1.0);
  CHECK(total_variation(p, Distribution({0.25, 0.75})) ==
        doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("tv_dual examples and F-invariance") {
  const Distribution p({0.5, 0.5});
  const Distribution q({0.25, 0.75});
  CHECK(tv_dual(p, p, 1.0) == 0.0);
  CHECK(tv_dual(Distribution({1.0, 0.0}), Distribution({0.0, 1.0}), 5.0) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tv_dual(p, q, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(tv_dual(p, q, 0.0), NonpositiveBound);
  CHECK_THROWS_AS(tv_dual(p, q, -2.0), NonpositiveBound);
}

TEST_CASE("the three total-variation characterizations agree") {
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const RandomPair pair = random_pair(41, trial);
    const double primal = total_variation(pair.p, pair.q);
    for (double f : {0.5, 1.0, 7.0}) {
      CHECK(std::abs(tv_dual(pair.p, pair.q, f) - primal) <= 1e-12);
    }
    CHECK(std::abs(tv_coupling(pair.p, pair.q).first - primal) <= 1e-9);
  }
}

TEST_CASE("kl examples") {
  const Distribution p({0.5, 0.5});
  CHECK(kl(p, p).value == 0.0);
  CHECK(kl(Distribution({1.0, 0.0}), p).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(kl(p, Distribution({1.0, 0.0})).infinite());
}

TEST_CASE("mutual information examples") {
  CHECK(mutual_information(product_distribution(Distribution({0.3, 0.7}),
                                                Distribution({0.6, 0.4})))
            .value == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(mutual_information(
            JointDistribution(Matrix::from_rows({{0.5, 0.0}, {0.0, 0.5}})))
            .value == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const double expected = 2.0 * 0.4 * std::log(1.6) + 2.0 * 0.1 * std::log(0.4);
  CHECK(mutual_information(
            JointDistribution(Matrix::from_rows({{0.4, 0.1}, {0.1, 0.4}})))
            .value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.192745).epsilon(1e-5));
}

TEST_CASE("hellinger examples") {
  const Distribution p({0.5, 0.5});
  CHECK(hellinger(p, p) == 0.0);
  CHECK(hellinger(Distribution({1.0, 0.0}), Distribution({0.0, 1.0})) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  // Direct formula evaluation for (0.5,0.5) vs (0.25,0.75).
  const double expected = std::sqrt(std::pow(std::sqrt(0.5) - std::sqrt(0.25), 2.0) +
                                    std::pow(std::sqrt(0.5) - std::sqrt(0.75), 2.0));
  CHECK(expected == doctest::Approx(0.2610523).epsilon(1e-6));
  CHECK(hellinger(p, Distribution({0.25, 0.75})) ==
        doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("chi squared examples") {
  const Distribution p({0.5, 0.5});
  CHECK(chi_squared(p, p).value == 0.0);
  CHECK(chi_squared(p, Distribution({0.25, 0.75})).value ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(chi_squared(Distribution({1.0, 0.0}), Distribution({0.0, 1.0})).infinite());
}

TEST_CASE("entropy examples") {
  CHECK(entropy(Distribution::point_mass(3, 1)) == 0.0);
  CHECK(entropy(Distribution({0.5, 0.5})) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const double expected = -0.25 * std::log(0.25) - 0.75 * std::log(0.75);
  CHECK(expected == doctest::Approx(0.562335).epsilon(1e-5));
  CHECK(entropy(Distribution({0.25, 0.75})) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("conditional mutual information examples") {
  const JointDistribution independent =
      product_distribution(Distribution({0.5, 0.5}), Distribution({0.3, 0.7}));
  const JointDistribution correlated(Matrix::from_rows({{0.5, 0.0}, {0.0, 0.5}}));

  {
    // X independent of Y under every slice.
    const std::vector<ConditionalSlice> slices{{0.4, independent}, {0.6, independent}};
    CHECK(conditional_mutual_information(slices).value ==
          doctest::Approx(0.0).epsilon(1e-15));
  }
  {
    // Constant C reduces to plain mutual information.
    const std::vector<ConditionalSlice> slices{{1.0, correlated}};
    CHECK(conditional_mutual_information(slices).value ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
  {
    // Two equally likely slices with MI ln 2 and 0.
    const std::vector<ConditionalSlice> slices{{0.5, correlated}, {0.5, independent}};
    CHECK(conditional_mutual_information(slices).value ==
          doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
  }
  {
    const std::vector<ConditionalSlice> bad{{0.9, independent}};
    CHECK_THROWS_AS(conditional_mutual_information(bad), MetricViolation);
  }
}

TEST_CASE("Pinsker, Hellinger and chi-squared dominations on random pairs") {
  for (std::uint64_t trial = 0; trial < 150; ++trial) {
    const RandomPair pair = random_pair(43, trial);
    const double tv = total_variation(pair.p, pair.q);
    const InfoValue kl_pq = kl(pair.p, pair.q);
    const InfoValue chi2 = chi_squared(pair.p, pair.q);
    if (!kl_pq.infinite()) {
      CHECK(tv <= std::sqrt(kl_pq.value / 2.0) + 1e-9);
    }
    CHECK(tv <= hellinger(pair.p, pair.q) + 1e-9);
    if (!chi2.infinite()) {
      CHECK(kl_pq.value <= std::log1p(chi2.value) + 1e-9);
      CHECK(std::log1p(chi2.value) <= chi2.value + 1e-9);
    }
  }
}

TEST_CASE("mutual information is symmetric and relabel-invariant") {
  SplitMix64 rng(47);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t rows = static_cast<std::size_t>(rng.uniform_int(2, 5));
    const std::size_t cols = static_cast<std::size_t>(rng.uniform_int(2, 5));
    Matrix m(rows, cols, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) total += (m(i, j) = rng.exp1());
    }
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m(i, j) /= total;
    }
    const JointDistribution joint(m);
    const double mi = mutual_information(joint).value;
    CHECK(mutual_information(joint.transposed()).value ==
          doctest::Approx(mi).epsilon(1e-12));

    // Relabeling: reverse both axes.
    Matrix perm(rows, cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        perm(rows - 1 - i, cols - 1 - j) = joint.at(i, j);
      }
    }
    CHECK(mutual_information(JointDistribution(perm)).value ==
          doctest::Approx(mi).epsilon(1e-12));

    // Entropy decomposition I(X;Y) = H(X) + H(Y) - H(X,Y).
    std::vector<double> flat;
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) flat.push_back(joint.at(i, j));
    }
    const double decomposition = entropy(joint.row_marginal()) +
                                 entropy(joint.col_marginal()) -
                                 entropy(Distribution(flat));
    CHECK(std::abs(mi - decomposition) <= 1e-9);
  }
}
