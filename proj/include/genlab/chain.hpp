#pragma once

#include <span>
#include <vector>

#include "genlab/bounds.hpp"
#include "genlab/numeric.hpp"
#include "genlab/space.hpp"

namespace genlab {

// A row-stochastic map between finite sets: rows(x, y) = P(Y = y | X = x).
class Channel {
 public:
  explicit Channel(Matrix rows);

  std::size_t in_size() const { return rows_.rows(); }
  std::size_t out_size() const { return rows_.cols(); }
  double at(std::size_t x, std::size_t y) const { return rows_(x, y); }
  const Matrix& rows() const { return rows_; }
  Distribution row(std::size_t x) const;

 private:
  Matrix rows_;
};

namespace channels {

Channel identity(std::size_t n);
Channel bsc(double crossover);            // binary symmetric
Channel binary_erasure(double p);         // 2 inputs, 3 outputs (0, 1, erased)
Channel constant(std::size_t in_size, const Distribution& output);
Channel random_full_support(SplitMix64& rng, std::size_t in_size, std::size_t out_size);

}  // namespace channels

// Dobrushin contraction coefficient: max pairwise row total variation.
// Upper-bounds the mutual-information SDPI constant.
double dobrushin(const Channel& k);

// Matrix product; the channel of the two-step chain.
Channel compose(const Channel& k1, const Channel& k2);

// Marginal propagation p' = p K.
Distribution push(const Distribution& p, const Channel& k);

// Input-output joint: probs(x, y) = p(x) K(y | x).
JointDistribution joint_through(const Distribution& p, const Channel& k);

struct SdpiReport {
  double i_xy;      // I(X; Y) through k1
  double i_xz;      // I(X; Z) through k1 then k2
  double eta_tv2;   // dobrushin(k2)
  bool holds;       // i_xz <= eta_tv2 * i_xy + 1e-9
  bool dpi_holds;   // i_xz <= i_xy + 1e-9
};

SdpiReport sdpi_check(const Distribution& prior, const Channel& k1, const Channel& k2);

struct ContractionReport {
  double eta_tv;                 // dobrushin of the composed end-to-end channel
  std::vector<double> per_layer; // eta_i = dobrushin(layer i)
  double eta_geo_mean;           // (prod eta_i)^(1/H)
};

struct DepthDecay {
  std::vector<double> mi_seq;    // I(X; Y_k) for k = 1..H
  ContractionReport report;
};

DepthDecay depth_decay(const Distribution& prior, std::span<const Channel> layers);

// eta^(H/2) * sqrt(K^2 R^2 mi / (2n)). eta = 1 disables the depth factor;
// eta = 0 (a constant layer somewhere) collapses the bound to zero.
double depth_contraction_bound(double k_lip, double radius, int depth, double eta,
                               double mi_wsn, long long n);

// One hidden-weight configuration: a fixed channel chain with its probability.
struct WeightedChain {
  double weight;
  std::vector<Channel> layers;
};

// (E_w[prod_i eta_i])^(1/H) over weighted configurations of equal depth.
double contraction_geo_mean(std::span<const WeightedChain> chains);

struct DepthBoundReport {
  BoundReport bound;             // name "depth_contraction"; no enumeration,
                                 // so true_gen_error is NaN
  ContractionReport contraction;
  std::vector<double> mi_seq;
};

// Measures per-layer contraction, forms the geometric mean, and evaluates the
// depth bound; mi_seq is reported so the exponential decay is inspectable.
DepthBoundReport depth_contraction_pipeline(const Distribution& prior,
                                            std::span<const Channel> layers,
                                            double k_lip, double radius,
                                            double mi_wsn, long long n);

}  // namespace genlab
