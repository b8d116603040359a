#include "genlab/space.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <set>

#include "genlab/errors.hpp"

namespace genlab {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw MetricViolation(std::string(what) + " contains a non-finite entry");
  }
}

bool log_enabled() {
  const char* env = std::getenv("GENLAB_LOG");
  return env != nullptr && env[0] != '\0';
}

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, Matrix dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
  const std::size_t n = labels_.size();
  if (dist_.rows() != dist_.cols()) {
    throw DimensionMismatch("distance matrix must be square, got " +
                            std::to_string(dist_.rows()) + "x" +
                            std::to_string(dist_.cols()));
  }
  if (dist_.rows() != n) {
    throw DimensionMismatch("distance matrix dimension " +
                            std::to_string(dist_.rows()) + " != label count " +
                            std::to_string(n));
  }
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != n) {
    throw MetricViolation("labels are not unique");
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      require_finite(dist_(i, j), "distance matrix");
      if (dist_(i, j) < 0.0) {
        throw MetricViolation("negative distance at (" + std::to_string(i) +
                              "," + std::to_string(j) + ")");
      }
    }
    if (std::abs(dist_(i, i)) > kMetricTol) {
      throw MetricViolation("nonzero self-distance at index " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(dist_(i, j) - dist_(j, i)) > kMetricTol) {
        throw MetricViolation("symmetry violated at (" + std::to_string(i) +
                              "," + std::to_string(j) + ")");
      }
      if (dist_(i, j) <= 0.0) pseudometric_ = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (dist_(i, k) > dist_(i, j) + dist_(j, k) + kMetricTol) {
          throw MetricViolation("triangle inequality violated at (" +
                                std::to_string(i) + "," + std::to_string(j) +
                                "," + std::to_string(k) + ")");
        }
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      diameter_ = std::max(diameter_, dist_(i, j));
    }
  }
  if (pseudometric_ && log_enabled()) {
    std::cerr << "genlab: warning: distinct points at distance zero "
                 "(pseudometric); W1 loses identity of indiscernibles\n";
  }
}

FiniteMetricSpace build_space(std::vector<std::string> labels, Matrix dist) {
  return FiniteMetricSpace(std::move(labels), std::move(dist));
}

FiniteMetricSpace two_point_space(double d) {
  Matrix m(2, 2, 0.0);
  m(0, 1) = d;
  m(1, 0) = d;
  return FiniteMetricSpace({"a", "b"}, std::move(m));
}

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw DimensionMismatch("distribution must have at least one entry");
  }
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!std::isfinite(probs_[i])) {
      throw MetricViolation("non-finite probability at index " + std::to_string(i));
    }
    if (probs_[i] < 0.0) {
      throw MetricViolation("negative probability at index " + std::to_string(i));
    }
  }
  const double total = compensated_total(probs_);
  if (std::abs(total - 1.0) > kMassTol) {
    throw MetricViolation("probabilities sum to " + format_value(total) +
                          ", expected 1");
  }
}

Distribution Distribution::point_mass(std::size_t size, std::size_t at) {
  std::vector<double> p(size, 0.0);
  p.at(at) = 1.0;
  return Distribution(std::move(p));
}

Distribution Distribution::uniform(std::size_t size) {
  return Distribution(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

JointDistribution::JointDistribution(Matrix probs) : probs_(std::move(probs)) {
  if (probs_.rows() == 0 || probs_.cols() == 0) {
    throw DimensionMismatch("joint distribution must be nonempty");
  }
  NeumaierSum total;
  for (std::size_t i = 0; i < probs_.rows(); ++i) {
    for (std::size_t j = 0; j < probs_.cols(); ++j) {
      const double v = probs_(i, j);
      if (!std::isfinite(v)) {
        throw MetricViolation("non-finite joint probability at (" +
                              std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (v < 0.0) {
        throw MetricViolation("negative joint probability at (" +
                              std::to_string(i) + "," + std::to_string(j) + ")");
      }
      total.add(v);
    }
  }
  if (std::abs(total.value() - 1.0) > kMassTol) {
    throw MetricViolation("joint mass is " + format_value(total.value()) +
                          ", expected 1");
  }
}

Distribution JointDistribution::row_marginal() const {
  std::vector<double> out(rows(), 0.0);
  for (std::size_t i = 0; i < rows(); ++i) {
    NeumaierSum s;
    for (std::size_t j = 0; j < cols(); ++j) s.add(probs_(i, j));
    out[i] = s.value();
  }
  return Distribution(std::move(out));
}

Distribution JointDistribution::col_marginal() const {
  std::vector<double> out(cols(), 0.0);
  for (std::size_t j = 0; j < cols(); ++j) {
    NeumaierSum s;
    for (std::size_t i = 0; i < rows(); ++i) s.add(probs_(i, j));
    out[j] = s.value();
  }
  return Distribution(std::move(out));
}

JointDistribution JointDistribution::transposed() const {
  Matrix t(cols(), rows());
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) t(j, i) = probs_(i, j);
  }
  return JointDistribution(std::move(t));
}

JointDistribution product_distribution(const Distribution& p, const Distribution& q) {
  Matrix m(p.size(), q.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) m(i, j) = p[i] * q[j];
  }
  return JointDistribution(std::move(m));
}

std::pair<Distribution, Distribution> marginals(const JointDistribution& joint) {
  return {joint.row_marginal(), joint.col_marginal()};
}

Coupling::Coupling(JointDistribution joint, Distribution target_p, Distribution target_q)
    : joint_(std::move(joint)),
      target_p_(std::move(target_p)),
      target_q_(std::move(target_q)) {
  if (joint_.rows() != target_p_.size() || joint_.cols() != target_q_.size()) {
    throw DimensionMismatch("coupling dimensions do not match targets");
  }
  const Distribution row = joint_.row_marginal();
  const Distribution col = joint_.col_marginal();
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (std::abs(row[i] - target_p_[i]) > kCouplingTol) {
      throw MetricViolation("row marginal mismatch at index " + std::to_string(i) +
                            ": " + format_value(row[i]) + " vs " +
                            format_value(target_p_[i]));
    }
  }
  for (std::size_t j = 0; j < col.size(); ++j) {
    if (std::abs(col[j] - target_q_[j]) > kCouplingTol) {
      throw MetricViolation("column marginal mismatch at index " + std::to_string(j) +
                            ": " + format_value(col[j]) + " vs " +
                            format_value(target_q_[j]));
    }
  }
}

}  // namespace genlab
