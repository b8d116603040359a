#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "genlab/divergences.hpp"
#include "genlab/space.hpp"
#include "genlab/transport.hpp"

namespace genlab {

// Nodes of the relation graph. LOG1PCHI2 is the derived quantity ln(1 + chi2),
// a node of its own so the relation ln(1 + chi2) <= chi2 is an ordinary edge.
enum class MetricId { W, TV, KL, BL, PR, HL, CHI2, LOG1PCHI2 };

const char* metric_name(MetricId id);
MetricId metric_from_name(std::string_view name);

// A directed edge from A to B with transform g means A(P,Q) <= g(B(P,Q));
// g is monotone nondecreasing on [0, inf). Edges that scale by the space
// diameter take it as the second argument and set requires_diameter.
struct RelationEdge {
  MetricId from;
  MetricId to;
  std::string transform_desc;
  double (*transform)(double x, double diam);
  bool requires_diameter;
  std::string source;  // literature reference for the inequality

  double apply(double x, double diam = 0.0) const { return transform(x, diam); }
  std::string name() const;  // "W<=PR" style identifier for reports
};

// The eight relations certified by this library.
const std::vector<RelationEdge>& builtin_edges();

// All seven metric values for one (p, q, space) triple, computed once.
struct MetricValues {
  double w1;
  double tv;
  double bl;
  double pr;
  double hl;
  InfoValue kl_val;
  InfoValue chi2;

  double get(MetricId id) const;  // LOG1PCHI2 is derived as ln(1 + chi2)
};

MetricValues compute_metrics(const Distribution& p, const Distribution& q,
                             const FiniteMetricSpace& space);

struct SlackReport {
  RelationEdge edge;
  double lhs;
  double rhs;
  double slack;  // rhs - lhs; >= -1e-8 when the inequality holds numerically
  bool vacuous;  // rhs infinite
};

// Evaluates every builtin edge on one pair.
std::vector<SlackReport> verify_all(const Distribution& p, const Distribution& q,
                                    const FiniteMetricSpace& space);

// A composite monotone transform along a shortest directed path; the space
// diameter is baked in at construction.
class ConversionChain {
 public:
  ConversionChain(std::vector<RelationEdge> edges, double diam);

  const std::vector<RelationEdge>& edges() const { return edges_; }
  double apply(double x) const;
  std::string description() const;

 private:
  std::vector<RelationEdge> edges_;
  double diam_;
};

// Shortest path from one metric to another in the edge graph (minimum edge
// count, lexicographic tie-break on metric names). Throws NoPath.
ConversionChain conversion_chain(MetricId from, MetricId to, double diam);

}  // namespace genlab
