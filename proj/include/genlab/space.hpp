#pragma once

#include <string>
#include <utility>
#include <vector>

#include "genlab/numeric.hpp"

namespace genlab {

// Construction tolerances. LP-derived objects carry solver error, hence the
// looser coupling tolerance.
inline constexpr double kMassTol = 1e-12;
inline constexpr double kMetricTol = 1e-12;
inline constexpr double kCouplingTol = 1e-9;

// A labeled finite point set with a validated distance matrix. Distances of
// exactly zero between distinct labels are accepted (pseudometric) but
// flagged, since Wasserstein then loses identity of indiscernibles.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::vector<std::string> labels, Matrix dist);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  double dist(std::size_t i, std::size_t j) const { return dist_(i, j); }
  const Matrix& dist_matrix() const { return dist_; }
  double diameter() const { return diameter_; }
  bool pseudometric() const { return pseudometric_; }

 private:
  std::vector<std::string> labels_;
  Matrix dist_;
  double diameter_ = 0.0;
  bool pseudometric_ = false;
};

FiniteMetricSpace build_space(std::vector<std::string> labels, Matrix dist);

// Two-point helper used all over the tests: labels {a, b} at distance d.
FiniteMetricSpace two_point_space(double d);

// Probability vector over a finite set. Entries must be nonnegative and sum
// to one within kMassTol. Zero-probability points are kept, never pruned.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  static Distribution point_mass(std::size_t size, std::size_t at);
  static Distribution uniform(std::size_t size);

 private:
  std::vector<double> probs_;
};

// Probability matrix over a product of two finite sets.
class JointDistribution {
 public:
  explicit JointDistribution(Matrix probs);

  std::size_t rows() const { return probs_.rows(); }
  std::size_t cols() const { return probs_.cols(); }
  double at(std::size_t i, std::size_t j) const { return probs_(i, j); }
  const Matrix& probs() const { return probs_; }

  Distribution row_marginal() const;
  Distribution col_marginal() const;
  JointDistribution transposed() const;

 private:
  Matrix probs_;
};

// probs[i][j] = p[i] * q[j].
JointDistribution product_distribution(const Distribution& p, const Distribution& q);

std::pair<Distribution, Distribution> marginals(const JointDistribution& joint);

// A joint distribution together with the marginals it is required to match
// (entrywise within kCouplingTol); the feasible points of the transport LP.
class Coupling {
 public:
  Coupling(JointDistribution joint, Distribution target_p, Distribution target_q);

  const JointDistribution& joint() const { return joint_; }
  const Distribution& target_p() const { return target_p_; }
  const Distribution& target_q() const { return target_q_; }

 private:
  JointDistribution joint_;
  Distribution target_p_;
  Distribution target_q_;
};

}  // namespace genlab
