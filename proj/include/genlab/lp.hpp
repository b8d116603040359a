#pragma once

#include <vector>

#include "genlab/numeric.hpp"

namespace genlab {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  double objective = 0.0;
  std::vector<double> variables;
  LpStatus status = LpStatus::Optimal;
  int iterations = 0;
};

struct LpOptions {
  int max_iters = 10000;
  double tol = 1e-9;
};

// Dense tableau simplex for min c'x subject to Ax = b, x >= 0, with Bland's
// rule for anti-cycling. Problem sizes here are tiny (tens of rows), so
// exactness and determinism beat asymptotic speed.
class SimplexSolver {
 public:
  SimplexSolver(Matrix a, std::vector<double> b, std::vector<double> c,
                LpOptions opts = {});

  // Two-phase solve (artificial variables in phase one).
  LpSolution solve();

  // Phase-two solve from a known feasible basis, one variable per row.
  LpSolution solve_from_basis(std::vector<int> basis);

 private:
  Matrix a_;
  std::vector<double> b_;
  std::vector<double> c_;
  LpOptions opts_;
};

// Transportation problem min sum cost[i][j]*x[i][j] with row sums = supply and
// column sums = demand (both sides summing to the same total). Starts from the
// north-west-corner basis, skipping phase one entirely.
LpSolution solve_transportation(const Matrix& cost, const std::vector<double>& supply,
                                const std::vector<double>& demand, LpOptions opts = {});

}  // namespace genlab
