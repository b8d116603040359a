#include "genlab/chain.hpp"

#include <cmath>
#include <limits>

#include "genlab/divergences.hpp"
#include "genlab/errors.hpp"

namespace genlab {

Channel::Channel(Matrix rows) : rows_(std::move(rows)) {
  if (rows_.rows() == 0 || rows_.cols() == 0) {
    throw DimensionMismatch("channel must be nonempty");
  }
  for (std::size_t x = 0; x < rows_.rows(); ++x) {
    NeumaierSum s;
    for (std::size_t y = 0; y < rows_.cols(); ++y) {
      const double v = rows_(x, y);
      if (!std::isfinite(v) || v < 0.0) {
        throw MetricViolation("channel entries must be finite and nonnegative");
      }
      s.add(v);
    }
    if (std::abs(s.value() - 1.0) > kMassTol) {
      throw MetricViolation("channel row " + std::to_string(x) + " sums to " +
                            format_value(s.value()) + ", expected 1");
    }
  }
}

Distribution Channel::row(std::size_t x) const {
  std::vector<double> r(out_size(), 0.0);
  for (std::size_t y = 0; y < out_size(); ++y) r[y] = rows_(x, y);
  return Distribution(std::move(r));
}

namespace channels {

Channel identity(std::size_t n) {
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return Channel(std::move(m));
}

Channel bsc(double crossover) {
  if (crossover < 0.0 || crossover > 1.0) {
    throw MetricViolation("BSC crossover must lie in [0, 1]");
  }
  Matrix m(2, 2, 0.0);
  m(0, 0) = 1.0 - crossover;
  m(0, 1) = crossover;
  m(1, 0) = crossover;
  m(1, 1) = 1.0 - crossover;
  return Channel(std::move(m));
}

Channel binary_erasure(double p) {
  if (p < 0.0 || p > 1.0) {
    throw MetricViolation("erasure probability must lie in [0, 1]");
  }
  Matrix m(2, 3, 0.0);
  m(0, 0) = 1.0 - p;
  m(0, 2) = p;
  m(1, 1) = 1.0 - p;
  m(1, 2) = p;
  return Channel(std::move(m));
}

Channel constant(std::size_t in_size, const Distribution& output) {
  Matrix m(in_size, output.size(), 0.0);
  for (std::size_t x = 0; x < in_size; ++x) {
    for (std::size_t y = 0; y < output.size(); ++y) m(x, y) = output[y];
  }
  return Channel(std::move(m));
}

Channel random_full_support(SplitMix64& rng, std::size_t in_size, std::size_t out_size) {
  Matrix m(in_size, out_size, 0.0);
  for (std::size_t x = 0; x < in_size; ++x) {
    NeumaierSum total;
    for (std::size_t y = 0; y < out_size; ++y) {
      m(x, y) = rng.exp1() + 1e-3;  // bounded away from zero rows
      total.add(m(x, y));
    }
    for (std::size_t y = 0; y < out_size; ++y) m(x, y) /= total.value();
  }
  return Channel(std::move(m));
}

}  // namespace channels

double dobrushin(const Channel& k) {
  double eta = 0.0;
  for (std::size_t x = 0; x < k.in_size(); ++x) {
    for (std::size_t y = x + 1; y < k.in_size(); ++y) {
      NeumaierSum s;
      for (std::size_t o = 0; o < k.out_size(); ++o) {
        s.add(std::abs(k.at(x, o) - k.at(y, o)));
      }
      eta = std::max(eta, 0.5 * s.value());
    }
  }
  return std::min(eta, 1.0);
}

Channel compose(const Channel& k1, const Channel& k2) {
  if (k1.out_size() != k2.in_size()) {
    throw DimensionMismatch("channel composition sizes do not match");
  }
  Matrix m(k1.in_size(), k2.out_size(), 0.0);
  for (std::size_t x = 0; x < k1.in_size(); ++x) {
    for (std::size_t z = 0; z < k2.out_size(); ++z) {
      NeumaierSum s;
      for (std::size_t y = 0; y < k1.out_size(); ++y) {
        s.add(k1.at(x, y) * k2.at(y, z));
      }
      m(x, z) = s.value();
    }
  }
  return Channel(std::move(m));
}

Distribution push(const Distribution& p, const Channel& k) {
  if (p.size() != k.in_size()) {
    throw DimensionMismatch("push input does not match channel input space");
  }
  std::vector<double> out(k.out_size(), 0.0);
  for (std::size_t y = 0; y < k.out_size(); ++y) {
    NeumaierSum s;
    for (std::size_t x = 0; x < p.size(); ++x) s.add(p[x] * k.at(x, y));
    out[y] = s.value();
  }
  return Distribution(std::move(out));
}

JointDistribution joint_through(const Distribution& p, const Channel& k) {
  if (p.size() != k.in_size()) {
    throw DimensionMismatch("joint_through input does not match channel");
  }
  Matrix m(p.size(), k.out_size(), 0.0);
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y = 0; y < k.out_size(); ++y) m(x, y) = p[x] * k.at(x, y);
  }
  return JointDistribution(std::move(m));
}

SdpiReport sdpi_check(const Distribution& prior, const Channel& k1, const Channel& k2) {
  const InfoValue i_xy = mutual_information(joint_through(prior, k1));
  const InfoValue i_xz = mutual_information(joint_through(prior, compose(k1, k2)));
  const double eta = dobrushin(k2);
  SdpiReport r{i_xy.value, i_xz.value, eta, false, false};
  r.dpi_holds = r.i_xz <= r.i_xy + 1e-9;
  r.holds = r.i_xz <= eta * r.i_xy + 1e-9;
  return r;
}

DepthDecay depth_decay(const Distribution& prior, std::span<const Channel> layers) {
  if (layers.empty()) throw UsageError("depth_decay needs at least one layer");
  if (prior.size() != layers.front().in_size()) {
    throw DimensionMismatch("prior does not match the first layer");
  }

  DepthDecay out;
  out.mi_seq.reserve(layers.size());
  out.report.per_layer.reserve(layers.size());

  Channel composed = layers.front();
  out.report.per_layer.push_back(dobrushin(layers.front()));
  out.mi_seq.push_back(mutual_information(joint_through(prior, composed)).value);
  for (std::size_t i = 1; i < layers.size(); ++i) {
    composed = compose(composed, layers[i]);
    out.report.per_layer.push_back(dobrushin(layers[i]));
    out.mi_seq.push_back(mutual_information(joint_through(prior, composed)).value);
  }

  out.report.eta_tv = dobrushin(composed);
  double product = 1.0;
  for (double eta : out.report.per_layer) product *= eta;
  out.report.eta_geo_mean =
      std::pow(product, 1.0 / static_cast<double>(layers.size()));
  return out;
}

double depth_contraction_bound(double k_lip, double radius, int depth, double eta,
                               double mi_wsn, long long n) {
  if (eta < 0.0 || eta > 1.0) {
    throw UsageError("contraction coefficient must lie in [0, 1]");
  }
  if (depth < 0 || n < 1 || mi_wsn < 0.0) {
    throw UsageError("depth_contraction_bound requires depth >= 0, n >= 1, mi >= 0");
  }
  const double base =
      std::sqrt(k_lip * k_lip * radius * radius * mi_wsn / (2.0 * static_cast<double>(n)));
  if (depth == 0) return base;
  if (eta == 0.0) return 0.0;
  return std::pow(eta, static_cast<double>(depth) / 2.0) * base;
}

double contraction_geo_mean(std::span<const WeightedChain> chains) {
  if (chains.empty()) throw UsageError("contraction_geo_mean needs at least one chain");
  const std::size_t depth = chains.front().layers.size();
  if (depth == 0) throw UsageError("chains must have at least one layer");

  NeumaierSum weight_total;
  NeumaierSum expectation;
  for (const WeightedChain& chain : chains) {
    if (chain.layers.size() != depth) {
      throw DimensionMismatch("all weighted chains must share the same depth");
    }
    if (chain.weight < 0.0) throw MetricViolation("chain weights must be nonnegative");
    weight_total.add(chain.weight);
    double product = 1.0;
    for (const Channel& layer : chain.layers) product *= dobrushin(layer);
    expectation.add(chain.weight * product);
  }
  if (std::abs(weight_total.value() - 1.0) > kMassTol) {
    throw MetricViolation("chain weights sum to " + format_value(weight_total.value()) +
                          ", expected 1");
  }
  return std::pow(expectation.value(), 1.0 / static_cast<double>(depth));
}

DepthBoundReport depth_contraction_pipeline(const Distribution& prior,
                                            std::span<const Channel> layers,
                                            double k_lip, double radius,
                                            double mi_wsn, long long n) {
  DepthDecay decay = depth_decay(prior, layers);
  DepthBoundReport out{
      BoundReport{}, std::move(decay.report), std::move(decay.mi_seq)};
  out.bound.name = "depth_contraction";
  out.bound.required = AssumptionSet{true, false, false, true};
  out.bound.met = AssumptionSet{std::isfinite(k_lip), true, true, std::isfinite(radius)};
  out.bound.value = depth_contraction_bound(k_lip, radius,
                                            static_cast<int>(layers.size()),
                                            out.contraction.eta_geo_mean, mi_wsn, n);
  out.bound.true_gen_error = std::numeric_limits<double>::quiet_NaN();
  out.bound.valid = true;  // nothing to compare against here
  return out;
}

}  // namespace genlab
