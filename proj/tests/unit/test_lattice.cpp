#include <doctest.h>

#include <cmath>

#include "genlab/errors.hpp"
#include "genlab/lattice.hpp"
#include "genlab/random_instances.hpp"

using namespace genlab;

namespace {

const RelationEdge& find_edge(MetricId from, MetricId to) {
  for (const RelationEdge& e : builtin_edges()) {
    if (e.from == from && e.to == to) return e;
  }
  throw NoPath("edge not found in test");
}

}  // namespace

TEST_CASE("the builtin edge set has exactly eight relations") {
  CHECK(builtin_edges().size() == 8);
}

TEST_CASE("edge transforms evaluate as documented") {
  CHECK(find_edge(MetricId::BL, MetricId::W).apply(0.7) == 0.7);
  CHECK(find_edge(MetricId::W, MetricId::PR).apply(0.5, 3.0) == doctest::Approx(2.0));
  CHECK(find_edge(MetricId::BL, MetricId::TV).apply(0.3) == doctest::Approx(0.6));
  CHECK(find_edge(MetricId::TV, MetricId::KL).apply(0.5) ==
        doctest::Approx(std::sqrt(0.25)));
  CHECK(find_edge(MetricId::KL, MetricId::CHI2).apply(1.0) ==
        doctest::Approx(std::log(2.0)));
  CHECK(find_edge(MetricId::W, MetricId::TV).apply(0.5, 3.0) == doctest::Approx(1.5));
}

TEST_CASE("verify_all on p = q gives zero slack on finite edges") {
  SplitMix64 rng(53);
  const FiniteMetricSpace space = random_space(rng, 4);
  const Distribution p = random_distribution(rng, 4);
  for (const SlackReport& r : verify_all(p, p, space)) {
    CHECK(r.lhs == doctest::Approx(0.0).epsilon(1e-12));
    if (!r.vacuous) {
      CHECK(r.rhs == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(r.slack == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("verify_all on disjoint point masses") {
  const FiniteMetricSpace space = two_point_space(0.4);
  const Distribution p({1.0, 0.0});
  const Distribution q({0.0, 1.0});
  const auto reports = verify_all(p, q, space);
  for (const SlackReport& r : reports) {
    if (r.edge.from == MetricId::TV && r.edge.to == MetricId::HL) {
      CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(r.rhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
      CHECK(r.slack == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-9));
    }
    // KL and chi-squared are infinite here: those edges must be vacuous.
    if (r.edge.from == MetricId::TV && r.edge.to == MetricId::KL) {
      CHECK(r.vacuous);
      CHECK(std::isinf(r.slack));
    }
  }
}

TEST_CASE("verify_all Pinsker edge on a worked pair") {
  const FiniteMetricSpace space = two_point_space(1.0);
  const Distribution p({0.5, 0.5});
  const Distribution q({0.25, 0.75});
  // Direct formula oracle: KL(p||q) = 0.5 ln 2 + 0.5 ln(2/3).
  const double kl_pq = 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0);
  for (const SlackReport& r : verify_all(p, q, space)) {
    if (r.edge.from == MetricId::TV && r.edge.to == MetricId::KL) {
      CHECK(r.lhs == doctest::Approx(0.25).epsilon(1e-12));
      CHECK(r.rhs == doctest::Approx(std::sqrt(kl_pq / 2.0)).epsilon(1e-12));
      CHECK(r.slack >= 0.0);
    }
  }
}

TEST_CASE("every edge holds on seeded random pairs") {
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    const RandomPair pair = random_pair(59, trial);
    for (const SlackReport& r : verify_all(pair.p, pair.q, pair.space)) {
      if (!r.vacuous) CHECK(r.slack >= -1e-8);
    }
  }
}

TEST_CASE("conversion chains compose transforms along shortest paths") {
  {
    const ConversionChain chain = conversion_chain(MetricId::BL, MetricId::TV, 0.0);
    CHECK(chain.edges().size() == 1);
    CHECK(chain.apply(0.25) == doctest::Approx(0.5));
  }
  {
    // TV -> KL -> CHI2: composite sqrt(ln(1 + x) / 2).
    const ConversionChain chain = conversion_chain(MetricId::TV, MetricId::CHI2, 0.0);
    CHECK(chain.edges().size() == 2);
    const double x = 0.8;
    CHECK(chain.apply(x) == doctest::Approx(std::sqrt(std::log1p(x) / 2.0)).epsilon(1e-15));
  }
  {
    const ConversionChain chain = conversion_chain(MetricId::W, MetricId::W, 5.0);
    CHECK(chain.edges().empty());
    CHECK(chain.apply(0.37) == 0.37);
    CHECK(chain.description() == "identity");
  }
  // PR has no outgoing edges, so nothing is reachable from it.
  CHECK_THROWS_AS(conversion_chain(MetricId::PR, MetricId::W, 1.0), NoPath);
}

TEST_CASE("composite transforms are monotone") {
  SplitMix64 rng(61);
  const double diam = 2.5;
  const std::vector<std::pair<MetricId, MetricId>> routes = {
      {MetricId::W, MetricId::CHI2},
      {MetricId::BL, MetricId::KL},
      {MetricId::W, MetricId::HL},
      {MetricId::TV, MetricId::CHI2},
  };
  for (const auto& [from, to] : routes) {
    const ConversionChain chain = conversion_chain(from, to, diam);
    for (int rep = 0; rep < 100; ++rep) {
      double x = rng.u01() * 4.0;
      double y = rng.u01() * 4.0;
      if (x > y) std::swap(x, y);
      CHECK(chain.apply(x) <= chain.apply(y) + 1e-12);
    }
  }
}

TEST_CASE("the relation graph is acyclic") {
  // Kahn-style check: repeatedly remove nodes with no incoming edges.
  std::vector<MetricId> nodes = {MetricId::W,  MetricId::TV,   MetricId::KL,
                                 MetricId::BL, MetricId::PR,   MetricId::HL,
                                 MetricId::CHI2, MetricId::LOG1PCHI2};
  std::vector<RelationEdge> edges = builtin_edges();
  bool removed = true;
  while (removed && !nodes.empty()) {
    removed = false;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      bool has_incoming = false;
      for (const RelationEdge& e : edges) {
        if (e.to == nodes[i]) has_incoming = true;
      }
      if (!has_incoming) {
        const MetricId gone = nodes[i];
        nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(i));
        std::erase_if(edges, [gone](const RelationEdge& e) { return e.from == gone; });
        removed = true;
        break;
      }
    }
  }
  CHECK(nodes.empty());
}

TEST_CASE("metric names round-trip") {
  for (MetricId id : {MetricId::W, MetricId::TV, MetricId::KL, MetricId::BL,
                      MetricId::PR, MetricId::HL, MetricId::CHI2, MetricId::LOG1PCHI2}) {
    CHECK(metric_from_name(metric_name(id)) == id);
  }
  CHECK_THROWS_AS(metric_from_name("nonsense"), ParseError);
}
