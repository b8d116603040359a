#include "genlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "genlab/errors.hpp"

namespace genlab {

namespace {

double identity_fn(double x, double) { return x; }
double twice_fn(double x, double) { return 2.0 * x; }
double pinsker_fn(double x, double) { return std::sqrt(x / 2.0); }
double log1p_fn(double x, double) { return std::log1p(x); }
double diam_plus_one_fn(double x, double diam) { return (diam + 1.0) * x; }
double diam_fn(double x, double diam) { return diam * x; }

}  // namespace

const char* metric_name(MetricId id) {
  switch (id) {
    case MetricId::W: return "W";
    case MetricId::TV: return "TV";
    case MetricId::KL: return "KL";
    case MetricId::BL: return "BL";
    case MetricId::PR: return "PR";
    case MetricId::HL: return "HL";
    case MetricId::CHI2: return "CHI2";
    case MetricId::LOG1PCHI2: return "LOG1PCHI2";
  }
  return "?";
}

MetricId metric_from_name(std::string_view name) {
  static const std::map<std::string, MetricId, std::less<>> table = {
      {"W", MetricId::W},   {"TV", MetricId::TV}, {"KL", MetricId::KL},
      {"BL", MetricId::BL}, {"PR", MetricId::PR}, {"HL", MetricId::HL},
      {"CHI2", MetricId::CHI2}, {"LOG1PCHI2", MetricId::LOG1PCHI2}};
  const auto it = table.find(name);
  if (it == table.end()) {
    throw ParseError("unknown metric id: " + std::string(name));
  }
  return it->second;
}

std::string RelationEdge::name() const {
  return std::string(metric_name(from)) + "<=" + metric_name(to);
}

const std::vector<RelationEdge>& builtin_edges() {
  static const std::vector<RelationEdge> edges = {
      {MetricId::W, MetricId::PR, "(diam+1)*x", diam_plus_one_fn, true,
       "Gibbs & Su (2002), Thm 2"},
      {MetricId::W, MetricId::TV, "diam*x", diam_fn, true,
       "coupling bound on a bounded space"},
      {MetricId::BL, MetricId::W, "x", identity_fn, false,
       "Kantorovich duality, restricted test class"},
      {MetricId::BL, MetricId::TV, "2*x", twice_fn, false,
       "dual of total variation, restricted test class"},
      {MetricId::TV, MetricId::HL, "x", identity_fn, false,
       "Le Cam (1969), p. 35"},
      {MetricId::TV, MetricId::KL, "sqrt(x/2)", pinsker_fn, false,
       "Pinsker's inequality"},
      {MetricId::KL, MetricId::CHI2, "ln(1+x)", log1p_fn, false,
       "Gibbs & Su (2002), Thm 5"},
      {MetricId::LOG1PCHI2, MetricId::CHI2, "x", identity_fn, false,
       "ln(1+x) <= x"},
  };
  return edges;
}

double MetricValues::get(MetricId id) const {
  switch (id) {
    case MetricId::W: return w1;
    case MetricId::TV: return tv;
    case MetricId::KL: return kl_val.value;
    case MetricId::BL: return bl;
    case MetricId::PR: return pr;
    case MetricId::HL: return hl;
    case MetricId::CHI2: return chi2.value;
    case MetricId::LOG1PCHI2: return std::log1p(chi2.value);
  }
  return 0.0;
}

MetricValues compute_metrics(const Distribution& p, const Distribution& q,
                             const FiniteMetricSpace& space) {
  MetricValues v{};
  v.w1 = wasserstein1(p, q, space).first;
  v.tv = total_variation(p, q);
  v.bl = bounded_lipschitz(p, q, space);
  v.pr = prokhorov(p, q, space);
  v.hl = hellinger(p, q);
  v.kl_val = kl(p, q);
  v.chi2 = chi_squared(p, q);
  return v;
}

std::vector<SlackReport> verify_all(const Distribution& p, const Distribution& q,
                                    const FiniteMetricSpace& space) {
  const MetricValues values = compute_metrics(p, q, space);
  std::vector<SlackReport> reports;
  reports.reserve(builtin_edges().size());
  for (const RelationEdge& edge : builtin_edges()) {
    const double lhs = values.get(edge.from);
    const double rhs = edge.apply(values.get(edge.to), space.diameter());
    SlackReport report{edge, lhs, rhs, 0.0, std::isinf(rhs)};
    report.slack = report.vacuous ? std::numeric_limits<double>::infinity()
                                  : rhs - lhs;
    reports.push_back(std::move(report));
  }
  return reports;
}

ConversionChain::ConversionChain(std::vector<RelationEdge> edges, double diam)
    : edges_(std::move(edges)), diam_(diam) {}

double ConversionChain::apply(double x) const {
  // Edges run from source to target; the innermost transform is the last
  // edge's, so fold right to left.
  double value = x;
  for (auto it = edges_.rbegin(); it != edges_.rend(); ++it) {
    value = it->apply(value, diam_);
  }
  return value;
}

std::string ConversionChain::description() const {
  if (edges_.empty()) return "identity";
  std::string out;
  for (const RelationEdge& e : edges_) {
    if (!out.empty()) out += " ; ";
    out += e.name() + " via " + e.transform_desc;
  }
  return out;
}

ConversionChain conversion_chain(MetricId from, MetricId to, double diam) {
  if (from == to) return ConversionChain({}, diam);

  // Breadth-first search expanding successors in lexicographic metric-name
  // order, so ties between equal-length paths resolve deterministically.
  std::vector<RelationEdge> sorted = builtin_edges();
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const RelationEdge& a, const RelationEdge& b) {
                     return std::string(metric_name(a.to)) < metric_name(b.to);
                   });

  std::map<MetricId, std::vector<RelationEdge>> path_to;
  path_to[from] = {};
  std::vector<MetricId> frontier{from};
  while (!frontier.empty()) {
    std::vector<MetricId> next;
    for (MetricId node : frontier) {
      for (const RelationEdge& edge : sorted) {
        if (edge.from != node) continue;
        if (path_to.count(edge.to)) continue;
        auto path = path_to[node];
        path.push_back(edge);
        if (edge.to == to) return ConversionChain(std::move(path), diam);
        path_to[edge.to] = path;
        next.push_back(edge.to);
      }
    }
    frontier = std::move(next);
  }
  throw NoPath(std::string("no conversion path from ") + metric_name(from) +
               " to " + metric_name(to));
}

}  // namespace genlab
