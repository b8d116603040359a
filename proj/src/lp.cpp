#include "genlab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "genlab/errors.hpp"

namespace genlab {

namespace {

// Working tableau: rows = constraints, columns = variables plus rhs.
// Basis[i] is the variable owning row i.
struct Tableau {
  Matrix t;                 // m x (n + 1), rhs in last column
  std::vector<int> basis;   // size m
  std::size_t m, n;
  double tol;

  Tableau(const Matrix& a, const std::vector<double>& b, double tol_)
      : t(a.rows(), a.cols() + 1), basis(a.rows(), -1), m(a.rows()),
        n(a.cols()), tol(tol_) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) t(i, j) = a(i, j);
      t(i, n) = b[i];
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const double piv = t(row, col);
    for (std::size_t j = 0; j <= n; ++j) t(row, j) /= piv;
    t(row, col) = 1.0;  // kill roundoff on the pivot itself
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row) continue;
      const double factor = t(i, col);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= n; ++j) t(i, j) -= factor * t(row, j);
      t(i, col) = 0.0;
    }
    basis[row] = static_cast<int>(col);
  }

  // Gauss-Jordan elimination making the given basis columns an identity.
  // Deterministic pivot row choice: largest magnitude among unused rows.
  void canonicalize(const std::vector<int>& wanted) {
    std::vector<bool> used(m, false);
    for (int col : wanted) {
      std::size_t best_row = m;
      double best_abs = tol;
      for (std::size_t i = 0; i < m; ++i) {
        if (used[i]) continue;
        const double v = std::abs(t(i, static_cast<std::size_t>(col)));
        if (v > best_abs) {
          best_abs = v;
          best_row = i;
        }
      }
      if (best_row == m) {
        throw SolverFailure("initial basis is singular", 0);
      }
      pivot(best_row, static_cast<std::size_t>(col));
      used[best_row] = true;
    }
  }

  // Reduced costs for objective c restricted to the current basis.
  // Returns the entering column per Bland's rule (lowest index with
  // negative reduced cost), or -1 at optimality.
  int entering(const std::vector<double>& c, std::size_t limit) const {
    for (std::size_t j = 0; j < limit; ++j) {
      double r = c[j];
      for (std::size_t i = 0; i < m; ++i) {
        const int bj = basis[i];
        if (bj >= 0 && static_cast<std::size_t>(bj) < c.size() && c[bj] != 0.0) {
          r -= c[bj] * t(i, j);
        }
      }
      bool basic = false;
      for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] == static_cast<int>(j)) {
          basic = true;
          break;
        }
      }
      if (!basic && r < -tol) return static_cast<int>(j);
    }
    return -1;
  }

  // Ratio test; ties broken by smallest basic variable index (Bland).
  int leaving(std::size_t col) const {
    int row = -1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double a = t(i, col);
      if (a <= tol) continue;
      const double rhs = std::max(t(i, n), 0.0);
      const double ratio = rhs / a;
      if (ratio < best - 1e-12 ||
          (ratio <= best + 1e-12 && row >= 0 &&
           basis[i] < basis[static_cast<std::size_t>(row)])) {
        best = ratio;
        row = static_cast<int>(i);
      }
    }
    return row;
  }

  double objective(const std::vector<double>& c) const {
    NeumaierSum s;
    for (std::size_t i = 0; i < m; ++i) {
      const int bj = basis[i];
      if (bj >= 0 && static_cast<std::size_t>(bj) < c.size()) {
        s.add(c[bj] * t(i, n));
      }
    }
    return s.value();
  }

  std::vector<double> extract(std::size_t count) const {
    std::vector<double> x(count, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const int bj = basis[i];
      if (bj >= 0 && static_cast<std::size_t>(bj) < count) {
        x[static_cast<std::size_t>(bj)] = std::max(t(i, n), 0.0);
      }
    }
    return x;
  }
};

// Runs simplex iterations for objective c over columns [0, limit).
// Returns Optimal or Unbounded; throws SolverFailure on the iteration cap.
LpStatus run_simplex(Tableau& tab, const std::vector<double>& c, std::size_t limit,
                     int max_iters, int& iterations) {
  while (true) {
    const int col = tab.entering(c, limit);
    if (col < 0) return LpStatus::Optimal;
    const int row = tab.leaving(static_cast<std::size_t>(col));
    if (row < 0) return LpStatus::Unbounded;
    if (++iterations > max_iters) {
      throw SolverFailure("simplex iteration cap exceeded", iterations - 1);
    }
    tab.pivot(static_cast<std::size_t>(row), static_cast<std::size_t>(col));
  }
}

}  // namespace

SimplexSolver::SimplexSolver(Matrix a, std::vector<double> b, std::vector<double> c,
                             LpOptions opts)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), opts_(opts) {
  if (a_.rows() != b_.size() || a_.cols() != c_.size()) {
    throw DimensionMismatch("LP dimensions inconsistent");
  }
}

LpSolution SimplexSolver::solve() {
  const std::size_t m = a_.rows();
  const std::size_t n = a_.cols();

  // Normalize b >= 0, then append one artificial variable per row.
  Matrix ext(m, n + m);
  std::vector<double> b = b_;
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = (b[i] < 0.0) ? -1.0 : 1.0;
    b[i] *= sign;
    for (std::size_t j = 0; j < n; ++j) ext(i, j) = sign * a_(i, j);
    ext(i, n + i) = 1.0;
  }

  Tableau tab(ext, b, opts_.tol);
  for (std::size_t i = 0; i < m; ++i) tab.basis[i] = static_cast<int>(n + i);

  int iterations = 0;
  std::vector<double> phase1(n + m, 0.0);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1.0;
  run_simplex(tab, phase1, n + m, opts_.max_iters, iterations);
  if (tab.objective(phase1) > 1e-8) {
    return LpSolution{0.0, {}, LpStatus::Infeasible, iterations};
  }

  // Drive leftover artificials out of the basis where possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < static_cast<int>(n)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(tab.t(i, j)) > opts_.tol) {
        tab.pivot(i, j);
        break;
      }
    }
  }

  // Phase two ignores artificial columns entirely.
  std::vector<double> c2(n + m, 0.0);
  for (std::size_t j = 0; j < n; ++j) c2[j] = c_[j];
  const LpStatus status = run_simplex(tab, c2, n, opts_.max_iters, iterations);
  if (status == LpStatus::Unbounded) {
    return LpSolution{0.0, {}, LpStatus::Unbounded, iterations};
  }
  LpSolution out;
  out.variables = tab.extract(n);
  out.objective = tab.objective(c2);
  out.status = LpStatus::Optimal;
  out.iterations = iterations;
  return out;
}

LpSolution SimplexSolver::solve_from_basis(std::vector<int> basis) {
  if (basis.size() != a_.rows()) {
    throw DimensionMismatch("basis size does not match row count");
  }
  Tableau tab(a_, b_, opts_.tol);
  tab.canonicalize(basis);

  int iterations = 0;
  const LpStatus status = run_simplex(tab, c_, a_.cols(), opts_.max_iters, iterations);
  if (status == LpStatus::Unbounded) {
    return LpSolution{0.0, {}, LpStatus::Unbounded, iterations};
  }
  LpSolution out;
  out.variables = tab.extract(a_.cols());
  out.objective = tab.objective(c_);
  out.status = LpStatus::Optimal;
  out.iterations = iterations;
  return out;
}

LpSolution solve_transportation(const Matrix& cost, const std::vector<double>& supply,
                                const std::vector<double>& demand, LpOptions opts) {
  const std::size_t n = supply.size();
  const std::size_t m = demand.size();
  if (cost.rows() != n || cost.cols() != m) {
    throw DimensionMismatch("cost matrix does not match supply/demand sizes");
  }

  // Equality constraints: every row sum, and all but the last column sum
  // (the last one is redundant since total supply equals total demand).
  const std::size_t rows = n + m - 1;
  const std::size_t vars = n * m;
  Matrix a(rows, vars, 0.0);
  std::vector<double> b(rows, 0.0);
  std::vector<double> c(vars, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    b[i] = supply[i];
    for (std::size_t j = 0; j < m; ++j) {
      a(i, i * m + j) = 1.0;
      c[i * m + j] = cost(i, j);
    }
  }
  for (std::size_t j = 0; j + 1 < m; ++j) {
    b[n + j] = demand[j];
    for (std::size_t i = 0; i < n; ++i) a(n + j, i * m + j) = 1.0;
  }

  // North-west-corner start: exactly n + m - 1 staircase cells, possibly with
  // degenerate zero allocations; they always form a valid (triangular) basis.
  std::vector<int> basis;
  basis.reserve(rows);
  {
    std::size_t i = 0, j = 0;
    double rem_s = supply[0];
    double rem_d = demand[0];
    while (true) {
      basis.push_back(static_cast<int>(i * m + j));
      if (i + 1 == n && j + 1 == m) break;
      const double moved = std::min(rem_s, rem_d);
      rem_s -= moved;
      rem_d -= moved;
      // The exhausted side advances; any monotone staircase is a valid basis,
      // so only bounds matter on ties.
      if ((rem_d <= rem_s && j + 1 < m) || i + 1 == n) {
        ++j;
        rem_d = demand[j];
      } else {
        ++i;
        rem_s = supply[i];
      }
    }
  }

  SimplexSolver solver(std::move(a), std::move(b), std::move(c), opts);
  return solver.solve_from_basis(std::move(basis));
}

}  // namespace genlab
