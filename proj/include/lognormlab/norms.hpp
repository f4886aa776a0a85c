#pragma once

#include <optional>
#include <string>
#include <variant>

#include "lognormlab/types.hpp"

namespace lognormlab {

// ---------------------------------------------------------------------------
// Norm specifications
//
// Supported norms on R^n:
//   l1            sum of absolute values
//   linf          max absolute value
//   lp            (sum |x_i|^p)^(1/p), 1 < p < infinity
//   l2 weighted   ||R x||_2 for invertible R
//   lp weighted   ||R x||_p for invertible R
//   polyhedral    ||W x||_inf = max_i |w_i^T x| for full-column-rank W (m >= n)
// ---------------------------------------------------------------------------

struct L1Norm {};
struct LinfNorm {};
struct LpNorm {
  double p = 2.0;
};
struct L2WeightedNorm {
  Matrix R;
};
struct LpWeightedNorm {
  double p = 2.0;
  Matrix R;
};
struct PolyhedralMaxNorm {
  Matrix W;
};

using NormSpec = std::variant<L1Norm, LinfNorm, LpNorm, L2WeightedNorm,
                              LpWeightedNorm, PolyhedralMaxNorm>;

struct ValidationReport {
  bool ok = true;
  std::string message;  // which invariant failed, empty when ok
};

// Relative singular-value cutoff for "invertible R" / "full column rank W".
inline constexpr double kRankTolerance = 1e-9;

// Checks the structural invariants of a spec (p range, matrix shapes,
// rank/conditioning with tolerance). Report-returning, never throws.
ValidationReport validate_norm_spec(const NormSpec& spec);

// Throwing form of the above for API boundaries.
void ensure_valid(const NormSpec& spec);

// Dimension pinned by the spec, or nullopt when the norm applies to any n.
std::optional<Index> norm_dim(const NormSpec& spec);

// ||x|| per spec. Cheap structural checks only; run validate_norm_spec /
// ensure_valid once per spec before evaluation loops.
double norm_eval(const NormSpec& spec, const Vector& x);

// Rows are the 2^(n-1) sign patterns (+1,...,+-1) with leading entry fixed
// to +1, in lexicographic order (+1 before -1), so that ||Wx||_inf = ||x||_1.
// Guarded to n <= 12.
Matrix l1_as_polyhedral(Index n);

// ||x||_p with max-factoring so large p does not overflow.
double lp_norm(const Vector& x, double p);

// Structural equality of two specs (same kind, identical parameters).
bool norm_spec_equal(const NormSpec& a, const NormSpec& b);

std::string norm_kind_name(const NormSpec& spec);

}  // namespace lognormlab
