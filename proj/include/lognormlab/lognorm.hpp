#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lognormlab/pairings.hpp"

namespace lognormlab {

// mu_1(A) = max_j ( a_jj + sum_{i != j} |a_ij| )   (column formula)
inline double mu_one_formula(const Matrix& A) {
  double best = -std::numeric_limits<double>::infinity();
  for (Index j = 0; j < A.cols(); ++j) {
    double v = A(j, j) + A.col(j).cwiseAbs().sum() - std::abs(A(j, j));
    best = std::max(best, v);
  }
  return best;
}

// mu_inf(A) = max_i ( a_ii + sum_{j != i} |a_ij| )   (row formula)
inline double mu_inf_formula(const Matrix& A) {
  double best = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < A.rows(); ++i) {
    double v = A(i, i) + A.row(i).cwiseAbs().sum() - std::abs(A(i, i));
    best = std::max(best, v);
  }
  return best;
}

enum class LogNormMethod { closed_form, lp_program, limit_oracle, lumer_sampled };

const char* to_string(LogNormMethod m);

struct LogNormResult {
  double value = 0.0;
  LogNormMethod method = LogNormMethod::closed_form;
  std::optional<Vector> witness;          // unit vector in the spec's norm
  std::optional<double> witness_pairing;  // [[A x*, x*]] at the witness
  std::string diagnostics;                // h-schedule / sample count used
};

// Log norm of A in the given norm. Dispatch:
//   l1, linf          exact column/row formulas
//   l2w (and p = 2)   1/2 lambda_max(M + M^T), M = R A R^{-1}
//   lpw               mu_p(R A R^{-1})
//   poly              linear program (build_polyhedral_lognorm_lp)
//   lp, p != 2        sampled lower bound, method = lumer_sampled; no
//                     exactness claim is made for general p
LogNormResult lognorm(const NormSpec& spec, const Matrix& A);

// Limit-definition estimate mu(A) = lim_{h->0+} (||I + hA|| - 1)/h using
// induced operator norms: exact for l1/linf/l2-like kinds, sampled sphere
// maximization (with local refinement) for poly and general p. Tail
// agreement as in the JMT estimator.
double lognorm_limit_oracle(const NormSpec& spec, const Matrix& A,
                            const std::vector<double>& schedule = default_jmt_schedule(),
                            std::uint64_t seed = 0, int sphere_samples = 4096);

// Induced operator norm ||M|| for the spec's norm. exact = false means the
// value is a sampled lower bound.
double induced_norm(const NormSpec& spec, const Matrix& M, bool* exact = nullptr,
                    std::uint64_t seed = 0, int sphere_samples = 4096);

struct LumerEstimate {
  double value = 0.0;
  Vector witness;
};

// max over sampled unit x of [[Ax, x]]; monotone in count for a fixed seed
// (per-index derived seeds). Returns the best sample as witness.
LumerEstimate lumer_sup_estimate(const PairingSpec& pairing, const Matrix& A,
                                 std::uint64_t seed, long count);

// Exact (linf) and epsilon-accurate (l1) maximizers of [[Ax, x]] over the
// unit sphere. For linf the returned x is a +-1 vector with
// [[Ax, x]]_max = mu_inf(A) exactly; for l1 the returned x satisfies
// [[Ax, x]]_1 >= mu_1(A) - 2 n max|a_ij| epsilon. Requires
// 0 < epsilon < 1/(2n) for l1. sign(0) counts as +1 here.
Vector lumer_witness(const NormSpec& spec, const Matrix& A, double epsilon = 1e-6);

// Best available reference value for mu(A): exact when the kind admits a
// closed form or LP, otherwise a refined sampled bound (exact = false).
// extra_starts, when given, are additional unit candidates included in the
// sampled supremum.
double mu_reference(const NormSpec& spec, const Matrix& A, bool* exact = nullptr,
                    std::uint64_t seed = 0,
                    const std::vector<Vector>* extra_starts = nullptr);

}  // namespace lognormlab
