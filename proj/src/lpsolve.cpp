#include "lognormlab/lpsolve.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "lognormlab/lognorm.hpp"
#include "lognormlab/norms.hpp"

namespace lognormlab {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// One substituted nonnegative column of the working tableau: contributes
// sign * w to original variable var (plus a fixed offset recorded per var).
struct ColumnMap {
  Index var;
  double sign;
};

void validate_lp(const LinearProgram& lp) {
  const Index n = lp.num_vars();
  auto bad = [](const char* what) { throw InputError(std::string("solve_lp: ") + what); };
  if (lp.A_eq.size() > 0 && lp.A_eq.cols() != n) bad("A_eq column count != num_vars");
  if (lp.A_ub.size() > 0 && lp.A_ub.cols() != n) bad("A_ub column count != num_vars");
  if (lp.A_eq.rows() != lp.b_eq.size()) bad("A_eq rows != b_eq length");
  if (lp.A_ub.rows() != lp.b_ub.size()) bad("A_ub rows != b_ub length");
  if (lp.lo.size() != n || lp.hi.size() != n) bad("bounds length != num_vars");
  if (!lp.b_eq.array().isFinite().all() || !lp.b_ub.array().isFinite().all())
    bad("b vectors must be finite");
  for (Index j = 0; j < n; ++j)
    if (lp.lo[j] > lp.hi[j]) bad("empty bound interval");
}

}  // namespace

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    default: return "unbounded";
  }
}

LpSolution solve_lp(const LinearProgram& lp, long max_pivots) {
  validate_lp(lp);
  const Index n = lp.num_vars();
  const Index m_eq = lp.A_eq.rows();

  // --- substitute bounded/free variables by nonnegative ones -------------
  // lo finite:            z = lo + w
  // lo = -inf, hi finite: z = hi - w
  // both infinite:        z = w+ - w-
  // A finite hi together with finite lo adds an upper-bound row w <= hi-lo.
  std::vector<ColumnMap> cols;
  Vector offset = Vector::Zero(n);
  std::vector<std::pair<Index, double>> extra_ub;  // (column, bound)
  for (Index j = 0; j < n; ++j) {
    const bool lo_fin = std::isfinite(lp.lo[j]);
    const bool hi_fin = std::isfinite(lp.hi[j]);
    if (lo_fin) {
      offset[j] = lp.lo[j];
      cols.push_back({j, 1.0});
      if (hi_fin) extra_ub.emplace_back(static_cast<Index>(cols.size()) - 1, lp.hi[j] - lp.lo[j]);
    } else if (hi_fin) {
      offset[j] = lp.hi[j];
      cols.push_back({j, -1.0});
    } else {
      cols.push_back({j, 1.0});
      cols.push_back({j, -1.0});
    }
  }
  const Index nw = static_cast<Index>(cols.size());
  const Index m_ub = lp.A_ub.rows() + static_cast<Index>(extra_ub.size());
  const Index m_rows = m_eq + m_ub;

  // Transformed constraint data over w >= 0.
  Matrix Aw(m_rows, nw);
  Aw.setZero();
  Vector bw(m_rows);
  for (Index k = 0; k < nw; ++k) {
    const auto& cm = cols[static_cast<std::size_t>(k)];
    if (m_eq > 0) Aw.col(k).head(m_eq) = cm.sign * lp.A_eq.col(cm.var);
    if (lp.A_ub.rows() > 0)
      Aw.col(k).segment(m_eq, lp.A_ub.rows()) = cm.sign * lp.A_ub.col(cm.var);
  }
  bw.head(m_eq) = lp.b_eq - lp.A_eq * offset;
  bw.segment(m_eq, lp.A_ub.rows()) = lp.b_ub - lp.A_ub * offset;
  for (std::size_t e = 0; e < extra_ub.size(); ++e) {
    Index r = m_eq + lp.A_ub.rows() + static_cast<Index>(e);
    Aw(r, extra_ub[e].first) = 1.0;
    bw[r] = extra_ub[e].second;
  }
  Vector cw = Vector::Zero(nw);
  for (Index k = 0; k < nw; ++k)
    cw[k] = cols[static_cast<std::size_t>(k)].sign * lp.c[cols[static_cast<std::size_t>(k)].var];

  // --- tableau: [ Aw | slacks | artificials | rhs ] -----------------------
  // Slack columns for every inequality row. Rows with negative rhs are
  // negated first; any row left without a usable +1 unit column gets an
  // artificial variable.
  std::vector<Index> slack_col(static_cast<std::size_t>(m_rows), -1);
  Index n_slack = m_ub;
  std::vector<bool> negated(static_cast<std::size_t>(m_rows), false);
  for (Index r = 0; r < m_rows; ++r)
    if (bw[r] < 0.0) negated[static_cast<std::size_t>(r)] = true;

  std::vector<Index> art_rows;
  for (Index r = 0; r < m_rows; ++r) {
    bool is_ub = r >= m_eq;
    if (!is_ub || negated[static_cast<std::size_t>(r)]) art_rows.push_back(r);
  }
  const Index n_art = static_cast<Index>(art_rows.size());
  const Index total_cols = nw + n_slack + n_art;

  Matrix T(m_rows, total_cols + 1);
  T.setZero();
  T.block(0, 0, m_rows, nw) = Aw;
  T.col(total_cols) = bw;
  for (Index r = m_eq; r < m_rows; ++r) {
    Index sc = nw + (r - m_eq);
    slack_col[static_cast<std::size_t>(r)] = sc;
    T(r, sc) = 1.0;
  }
  for (Index r = 0; r < m_rows; ++r)
    if (negated[static_cast<std::size_t>(r)]) T.row(r) = -T.row(r);
  std::vector<Index> basis(static_cast<std::size_t>(m_rows), -1);
  {
    Index a = 0;
    for (Index r = 0; r < m_rows; ++r) {
      bool needs_art = r < m_eq || negated[static_cast<std::size_t>(r)];
      if (needs_art) {
        Index ac = nw + n_slack + a++;
        T(r, ac) = 1.0;
        basis[static_cast<std::size_t>(r)] = ac;
      } else {
        basis[static_cast<std::size_t>(r)] = slack_col[static_cast<std::size_t>(r)];
      }
    }
  }

  Eigen::RowVectorXd cost(total_cols + 1);  // reduced-cost row, rhs = -objective
  long pivots = 0;

  auto do_pivot = [&](Index prow, Index pcol) {
    T.row(prow) /= T(prow, pcol);
    for (Index r = 0; r < m_rows; ++r) {
      if (r == prow) continue;
      double f = T(r, pcol);
      if (f != 0.0) T.row(r) -= f * T.row(prow);
    }
    double fc = cost(pcol);
    if (fc != 0.0) cost -= fc * T.row(prow);
    basis[static_cast<std::size_t>(prow)] = pcol;
    ++pivots;
  };

  // Bland: entering = lowest-index eligible column; leaving = min ratio,
  // ties broken by lowest basic-variable index. Returns false when no
  // entering column remains (optimal for the current cost row).
  auto run_simplex = [&](const std::vector<bool>& banned) -> bool {
    for (;;) {
      Index enter = -1;
      for (Index j = 0; j < total_cols; ++j) {
        if (banned[static_cast<std::size_t>(j)]) continue;
        if (cost(j) < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      Index leave = -1;
      double best_ratio = kInf;
      for (Index r = 0; r < m_rows; ++r) {
        double a = T(r, enter);
        if (a > kPivotTol) {
          double ratio = T(r, total_cols) / a;
          if (ratio < best_ratio - kPivotTol ||
              (ratio < best_ratio + kPivotTol && leave >= 0 &&
               basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
            best_ratio = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) return false;  // unbounded direction
      if (pivots >= max_pivots)
        throw ResourceError("solve_lp: pivot limit exceeded (" + std::to_string(max_pivots) + ")");
      do_pivot(leave, enter);
    }
  };

  LpSolution sol;

  // --- phase 1 ------------------------------------------------------------
  std::vector<bool> banned_p1(static_cast<std::size_t>(total_cols), false);
  cost.setZero();
  for (Index a = 0; a < n_art; ++a) cost(nw + n_slack + a) = 1.0;
  for (Index r = 0; r < m_rows; ++r) {
    Index b = basis[static_cast<std::size_t>(r)];
    if (b >= nw + n_slack) cost -= T.row(r);  // zero out the artificial basics
  }
  if (!run_simplex(banned_p1))
    throw NumericError("solve_lp: phase-1 reported an unbounded direction");
  double infeas = -cost(total_cols);
  if (infeas > 1e-9 * (1.0 + bw.cwiseAbs().sum())) {
    sol.status = LpStatus::infeasible;
    sol.iterations = pivots;
    return sol;
  }

  // Drive leftover artificials out of the basis; rows that cannot pivot on
  // any structural column are redundant and stay parked at zero.
  for (Index r = 0; r < m_rows; ++r) {
    Index b = basis[static_cast<std::size_t>(r)];
    if (b < nw + n_slack) continue;
    Index pcol = -1;
    for (Index j = 0; j < nw + n_slack; ++j) {
      if (std::abs(T(r, j)) > kPivotTol) {
        pcol = j;
        break;
      }
    }
    if (pcol >= 0) do_pivot(r, pcol);
  }

  // --- phase 2 ------------------------------------------------------------
  std::vector<bool> banned_p2(static_cast<std::size_t>(total_cols), false);
  for (Index a = 0; a < n_art; ++a) banned_p2[static_cast<std::size_t>(nw + n_slack + a)] = true;
  cost.setZero();
  cost.head(nw) = cw.transpose();
  for (Index r = 0; r < m_rows; ++r) {
    Index b = basis[static_cast<std::size_t>(r)];
    if (b < nw && cw[b] != 0.0) cost -= cw[b] * T.row(r);
  }
  if (!run_simplex(banned_p2)) {
    sol.status = LpStatus::unbounded;
    sol.iterations = pivots;
    return sol;
  }

  // --- recover z ----------------------------------------------------------
  Vector w = Vector::Zero(nw);
  for (Index r = 0; r < m_rows; ++r) {
    Index b = basis[static_cast<std::size_t>(r)];
    if (b < nw) w[b] = T(r, total_cols);
  }
  Vector z = offset;
  for (Index k = 0; k < nw; ++k) {
    const auto& cm = cols[static_cast<std::size_t>(k)];
    z[cm.var] += cm.sign * w[k];
  }

  sol.status = LpStatus::optimal;
  sol.z = z;
  sol.objective_value = lp.c.dot(z);
  sol.iterations = pivots;

  // Constraint residual guard; an optimal answer violating this is a bug.
  double viol = 0.0;
  if (m_eq > 0) viol = (lp.A_eq * z - lp.b_eq).cwiseAbs().maxCoeff();
  if (lp.A_ub.rows() > 0)
    viol = std::max(viol, (lp.A_ub * z - lp.b_ub).maxCoeff());
  for (Index j = 0; j < n; ++j) {
    if (std::isfinite(lp.lo[j])) viol = std::max(viol, lp.lo[j] - z[j]);
    if (std::isfinite(lp.hi[j])) viol = std::max(viol, z[j] - lp.hi[j]);
  }
  if (viol > 1e-8)
    throw NumericError("solve_lp: optimal point violates constraints by " + std::to_string(viol));
  return sol;
}

LinearProgram build_polyhedral_lognorm_lp(const Matrix& W, const Matrix& A) {
  ensure_valid(NormSpec{PolyhedralMaxNorm{W}});
  const Index m = W.rows();
  const Index n = W.cols();
  if (A.rows() != n || A.cols() != n)
    throw InputError("build_polyhedral_lognorm_lp: A must be n x n with n = cols(W)");

  // Variable layout: H row-major (m^2), off-diagonal T row-major skipping
  // the diagonal (m^2 - m, lower bound 0), gamma (last).
  const Index nH = m * m;
  const Index nT = m * m - m;
  const Index nv = nH + nT + 1;
  auto hvar = [m](Index i, Index j) { return i * m + j; };
  auto tvar = [m, nH](Index i, Index j) {
    Index off = i * (m - 1) + (j > i ? j - 1 : j);
    return nH + off;
  };
  const Index gvar = nv - 1;

  LinearProgram lp;
  lp.c = Vector::Zero(nv);
  lp.c[gvar] = 1.0;
  lp.lo = Vector::Constant(nv, -kInf);
  lp.hi = Vector::Constant(nv, kInf);
  for (Index k = nH; k < nH + nT; ++k) lp.lo[k] = 0.0;

  // W A = H W, row (i,j): sum_k W(k,j) H(i,k) = (WA)(i,j).
  Matrix WA = W * A;
  lp.A_eq = Matrix::Zero(m * n, nv);
  lp.b_eq = Vector(m * n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      Index r = i * n + j;
      for (Index k = 0; k < m; ++k) lp.A_eq(r, hvar(i, k)) = W(k, j);
      lp.b_eq[r] = WA(i, j);
    }
  }

  // |H_ij| <= T_ij off-diagonal, and diag(H) 1 + T 1 <= gamma 1.
  const Index n_ub = 2 * nT + m;
  lp.A_ub = Matrix::Zero(n_ub, nv);
  lp.b_ub = Vector::Zero(n_ub);
  Index r = 0;
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) {
      if (i == j) continue;
      lp.A_ub(r, hvar(i, j)) = 1.0;
      lp.A_ub(r, tvar(i, j)) = -1.0;
      ++r;
      lp.A_ub(r, hvar(i, j)) = -1.0;
      lp.A_ub(r, tvar(i, j)) = -1.0;
      ++r;
    }
  }
  for (Index i = 0; i < m; ++i) {
    lp.A_ub(r, hvar(i, i)) = 1.0;
    for (Index j = 0; j < m; ++j)
      if (j != i) lp.A_ub(r, tvar(i, j)) = 1.0;
    lp.A_ub(r, gvar) = -1.0;
    ++r;
  }
  return lp;
}

std::pair<Matrix, double> extract_H(const LinearProgram& lp, const LpSolution& sol, Index m) {
  if (sol.status != LpStatus::optimal)
    throw InputError("extract_H: solution is not optimal");
  if (sol.z.size() != 2 * m * m - m + 1)
    throw InputError("extract_H: solution size does not match m");
  Matrix H(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) H(i, j) = sol.z[i * m + j];
  double gamma = sol.z[sol.z.size() - 1];

  // Consistency: the equality block of this LP is exactly vec(WA - HW).
  double eq_resid = 0.0;
  if (lp.A_eq.rows() > 0)
    eq_resid = (lp.A_eq * sol.z - lp.b_eq).cwiseAbs().maxCoeff();
  if (eq_resid > 1e-7)
    throw NumericError("extract_H: ||WA - HW|| residual " + std::to_string(eq_resid));
  double mu = mu_inf_formula(H);
  if (mu > gamma + 1e-7)
    throw NumericError("extract_H: mu_inf(H) = " + std::to_string(mu) +
                       " exceeds gamma = " + std::to_string(gamma));
  return {H, gamma};
}

}  // namespace lognormlab
