#include "genlab/transport.hpp"

#include <algorithm>
#include <cmath>

#include "genlab/errors.hpp"

namespace genlab {

namespace {

void check_pair(const Distribution& p, const Distribution& q,
                const FiniteMetricSpace& space) {
  if (p.size() != space.size() || q.size() != space.size()) {
    throw DimensionMismatch("distributions do not live on the given space");
  }
}

}  // namespace

std::pair<double, TransportPlan> wasserstein1(const Distribution& p,
                                              const Distribution& q,
                                              const FiniteMetricSpace& space,
                                              LpOptions opts) {
  check_pair(p, q, space);
  const std::size_t n = space.size();

  LpSolution sol = solve_transportation(space.dist_matrix(), p.probs(), q.probs(), opts);
  if (sol.status != LpStatus::Optimal) {
    throw SolverFailure("transportation LP did not reach optimality", sol.iterations);
  }

  // Clean tiny negatives and renormalize before validating as a coupling.
  Matrix plan(n, n);
  NeumaierSum mass;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = std::max(sol.variables[i * n + j], 0.0);
      plan(i, j) = v;
      mass.add(v);
    }
  }
  const double total = mass.value();
  if (total <= 0.0) {
    throw SolverFailure("transportation LP returned an empty plan", sol.iterations);
  }
  NeumaierSum cost;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      plan(i, j) /= total;
      cost.add(plan(i, j) * space.dist(i, j));
    }
  }
  const double value = cost.value();
  Coupling coupling(JointDistribution(std::move(plan)), p, q);
  return {value, TransportPlan{std::move(coupling), value}};
}

DualSolution wasserstein1_dual(const Distribution& p, const Distribution& q,
                               const FiniteMetricSpace& space, LpOptions opts) {
  check_pair(p, q, space);
  const std::size_t n = space.size();
  if (n == 1) return {0.0, {0.0}};

  // Variables: f split into u - v (2n columns), then one slack per ordered
  // pair (i, j), i != j, for the constraint f_i - f_j + s_ij = d(i, j).
  // Starting basis: all slacks (f = 0 is feasible).
  const std::size_t pairs = n * (n - 1);
  const std::size_t vars = 2 * n + pairs;
  Matrix a(pairs, vars, 0.0);
  std::vector<double> b(pairs, 0.0);
  std::vector<double> c(vars, 0.0);
  std::vector<int> basis(pairs, 0);

  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      a(row, i) = 1.0;
      a(row, n + i) = -1.0;
      a(row, j) = -1.0;
      a(row, n + j) = 1.0;
      a(row, 2 * n + row) = 1.0;
      b[row] = space.dist(i, j);
      basis[row] = static_cast<int>(2 * n + row);
      ++row;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double w = p[i] - q[i];
    c[i] = -w;      // maximize sum w_i (u_i - v_i)
    c[n + i] = w;
  }

  SimplexSolver solver(std::move(a), std::move(b), std::move(c), opts);
  LpSolution sol = solver.solve_from_basis(std::move(basis));
  if (sol.status != LpStatus::Optimal) {
    throw SolverFailure("Kantorovich dual LP did not reach optimality", sol.iterations);
  }
  std::vector<double> f(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) f[i] = sol.variables[i] - sol.variables[n + i];
  return {-sol.objective, std::move(f)};
}

std::pair<double, Coupling> tv_coupling(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) {
    throw DimensionMismatch("tv_coupling inputs must share a support set");
  }
  const std::size_t n = p.size();

  // Diagonal carries min(p_i, q_i); the leftover mass moves off-diagonal as
  // the product of the normalized excesses, mismatching with probability
  // exactly 1 - sum min(p_i, q_i).
  std::vector<double> diag(n, 0.0), excess_p(n, 0.0), excess_q(n, 0.0);
  NeumaierSum overlap;
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = std::min(p[i], q[i]);
    excess_p[i] = p[i] - diag[i];
    excess_q[i] = q[i] - diag[i];
    overlap.add(diag[i]);
  }
  const double mismatch = std::max(0.0, 1.0 - overlap.value());

  Matrix joint(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) joint(i, i) = diag[i];
  if (mismatch > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      if (excess_p[i] <= 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (excess_q[j] <= 0.0) continue;
        joint(i, j) += excess_p[i] * excess_q[j] / mismatch;
      }
    }
  }
  return {mismatch, Coupling(JointDistribution(std::move(joint)), p, q)};
}

double prokhorov(const Distribution& p, const Distribution& q,
                 const FiniteMetricSpace& space, int enumeration_cap) {
  check_pair(p, q, space);
  const std::size_t n = space.size();
  if (n > static_cast<std::size_t>(enumeration_cap)) {
    throw SpaceTooLarge("prokhorov subset enumeration supports at most " +
                        std::to_string(enumeration_cap) + " points, got " +
                        std::to_string(n));
  }

  // Candidate breakpoints: 0 plus every distinct pairwise distance. The
  // fattening map is constant between consecutive breakpoints, so the best
  // feasible alpha on [d_k, d_{k+1}) is max(d_k, g(d_k)) where
  // g(a) = max_B (P(B) - Q(B^a)); that candidate is always feasible because
  // g is nonincreasing.
  std::vector<double> breaks{0.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) breaks.push_back(space.dist(i, j));
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const std::uint32_t subsets = 1u << n;
  std::vector<std::uint32_t> fat(n);
  double best = 1.0;  // alpha = 1 is always feasible
  for (double alpha : breaks) {
    for (std::size_t y = 0; y < n; ++y) {
      std::uint32_t mask = 0;
      for (std::size_t x = 0; x < n; ++x) {
        if (space.dist(x, y) <= alpha) mask |= (1u << x);
      }
      fat[y] = mask;
    }
    double worst = 0.0;
    for (std::uint32_t set = 1; set < subsets; ++set) {
      std::uint32_t fattened = 0;
      double p_mass = 0.0;
      for (std::size_t y = 0; y < n; ++y) {
        if (set & (1u << y)) {
          fattened |= fat[y];
          p_mass += p[y];
        }
      }
      double q_mass = 0.0;
      for (std::size_t x = 0; x < n; ++x) {
        if (fattened & (1u << x)) q_mass += q[x];
      }
      worst = std::max(worst, p_mass - q_mass);
    }
    best = std::min(best, std::max(alpha, worst));
  }
  return best;
}

double bounded_lipschitz(const Distribution& p, const Distribution& q,
                         const FiniteMetricSpace& space, LpOptions opts) {
  check_pair(p, q, space);
  const std::size_t n = space.size();
  if (n == 1) return 0.0;

  // Substitute g = f + 1 in [0, 2]; since sum (p - q) = 0 the objective is
  // unchanged. Rows: pairwise Lipschitz constraints plus the cap g_i <= 2.
  const std::size_t pairs = n * (n - 1);
  const std::size_t rows = pairs + n;
  const std::size_t vars = n + pairs + n;  // g, pair slacks, cap slacks
  Matrix a(rows, vars, 0.0);
  std::vector<double> b(rows, 0.0);
  std::vector<double> c(vars, 0.0);
  std::vector<int> basis(rows, 0);

  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      a(row, i) = 1.0;
      a(row, j) = -1.0;
      a(row, n + row) = 1.0;
      b[row] = space.dist(i, j);
      basis[row] = static_cast<int>(n + row);
      ++row;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    a(row, i) = 1.0;
    a(row, n + pairs + i) = 1.0;
    b[row] = 2.0;
    basis[row] = static_cast<int>(n + pairs + i);
    ++row;
  }
  for (std::size_t i = 0; i < n; ++i) c[i] = -(p[i] - q[i]);

  SimplexSolver solver(std::move(a), std::move(b), std::move(c), opts);
  LpSolution sol = solver.solve_from_basis(std::move(basis));
  if (sol.status != LpStatus::Optimal) {
    throw SolverFailure("bounded-Lipschitz LP did not reach optimality", sol.iterations);
  }
  return std::max(0.0, -sol.objective);
}

}  // namespace genlab
