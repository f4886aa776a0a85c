#pragma once

#include <utility>

#include "lognormlab/types.hpp"

namespace lognormlab {

// Standard-form linear program: minimize c^T z subject to
//   A_eq z  = b_eq,
//   A_ub z <= b_ub,
//   lo <= z <= hi   (entries of lo/hi may be -inf/+inf).
struct LinearProgram {
  Vector c;
  Matrix A_eq;
  Vector b_eq;
  Matrix A_ub;
  Vector b_ub;
  Vector lo;
  Vector hi;

  Index num_vars() const { return c.size(); }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Vector z;
  double objective_value = 0.0;
  long iterations = 0;
};

const char* to_string(LpStatus s);

// Two-phase dense simplex with Bland's anti-cycling pivot rule.
// Free variables are split, equalities get artificial variables. Pivot
// tolerance 1e-9, iteration guard max_pivots (ResourceError when hit).
// For an optimal solution all constraints hold to 1e-8 absolute.
LpSolution solve_lp(const LinearProgram& lp, long max_pivots = 100000);

// Transcription of the polyhedral log-norm problem
//   minimize mu_inf(H)  subject to  W A = H W
// as an LP over z = (vec(H) row-major: m^2 free, off-diagonal T >= 0:
// m^2 - m, gamma: free), using the Metzler bound
//   mu_inf(H) <= gamma  iff  exists zero-diagonal T >= 0 with
//   diag(H) - T <= H <= diag(H) + T  and  (diag(H) + T) 1 <= gamma 1.
// 2m^2 - m + 1 variables, m n equality rows, 2(m^2 - m) + m inequality rows.
LinearProgram build_polyhedral_lognorm_lp(const Matrix& W, const Matrix& A);

// Recovers (H, gamma) from an optimal solution of the LP above and verifies
// || W A - H W ||_max <= 1e-7 and mu_inf(H) <= gamma + 1e-7.
std::pair<Matrix, double> extract_H(const LinearProgram& lp, const LpSolution& sol, Index m);

}  // namespace lognormlab
