#pragma once

#include <variant>
#include <vector>

#include "lognormlab/norms.hpp"

namespace lognormlab {

// ---------------------------------------------------------------------------
// Pairings: binary operations [[x,y]] compatible with a norm, ||x||^2 = [[x,x]].
//
// Regular pairings implemented in closed form:
//   sign      [[x,y]] = ||y||_1 sign(y)^T x                      (l1)
//   max       [[x,y]] = max_{i in I_inf(y)} y_i x_i              (linf)
//   lp        [[x,y]] = ||y||_p^{2-p} sum_i sign(y_i)|y_i|^{p-1} x_i
//   l2w       [[x,y]] = x^T P y, P symmetric positive definite
//   lpw       [[x,y]] = [[Rx, Ry]]_p
//   poly      [[x,y]] = [[Wx, Wy]]_max                           (||.||_W)
//   minidx    [[x,y]] = x_m y_m, m = min I_inf(y)                (linf, LG)
//
// Deliberately irregular weak pairings (negative controls, Euclidean norm):
//   abssum    [[x,y]] = sum |x_i y_i|
//   combo     [[x,y]] = alpha x^T y + (1-alpha) sum |x_i y_i|
//
// Numeric one-sided directional-derivative pairings over any norm:
//   jmt+ / jmt-
// ---------------------------------------------------------------------------

struct SignPairing {};
struct MaxPairing {};
struct LpPairing {
  double p = 2.0;
};
struct L2WeightedPairing {
  Matrix P;
};
struct LpWeightedPairing {
  double p = 2.0;
  Matrix R;
};
struct PolyhedralMaxPairing {
  Matrix W;
};
struct MinIndexLgPairing {};
struct AbsSumPairing {};
struct ConvexComboPairing {
  double alpha = 1.0;
};
struct JmtUpperPairing {
  NormSpec norm;
};
struct JmtLowerPairing {
  NormSpec norm;
};

using PairingSpec =
    std::variant<SignPairing, MaxPairing, LpPairing, L2WeightedPairing,
                 LpWeightedPairing, PolyhedralMaxPairing, MinIndexLgPairing,
                 AbsSumPairing, ConvexComboPairing, JmtUpperPairing, JmtLowerPairing>;

ValidationReport validate_pairing_spec(const PairingSpec& spec);
void ensure_valid(const PairingSpec& spec);
std::optional<Index> pairing_dim(const PairingSpec& spec);
std::string pairing_kind_name(const PairingSpec& spec);

// The norm with ||x||^2 = [[x,x]], as a deterministic mapping. For l2w the
// result carries R = P^(1/2) (symmetric square root).
NormSpec compatible_norm(const PairingSpec& spec);

// The canonical regular pairing for a norm kind: sign for l1, max for linf,
// the lp/weighted/polyhedral pairings for their norms (P = R^T R for l2w).
PairingSpec natural_pairing(const NormSpec& spec);

// Strictly decreasing h sequence h_k = 2^-k, k in [k_lo, k_hi].
std::vector<double> power_schedule(int k_lo, int k_hi);
const std::vector<double>& default_jmt_schedule();  // k = 8..40

// [[x,y]] per spec. jmt+/jmt- kinds dispatch to the numeric estimators with
// the default schedule.
double pairing_eval(const PairingSpec& spec, const Vector& x, const Vector& y);

// Upper JMT pairing ||y|| lim_{h->0+} (||y+hx|| - ||y||)/h, estimated on the
// given h schedule with tail agreement (two consecutive estimates within
// 1e-7 (1 + ||x|| ||y||)). Throws NumericError, carrying the last two
// estimates, if the tail never settles.
double jmt_upper(const NormSpec& norm, const Vector& x, const Vector& y,
                 const std::vector<double>& schedule = default_jmt_schedule());

// Lower JMT pairing, via the identity [[x,y]]_- = -[[-x,y]]_+.
double jmt_lower(const NormSpec& norm, const Vector& x, const Vector& y,
                 const std::vector<double>& schedule = default_jmt_schedule());

// Closed form of the l1 upper JMT pairing:
//   [x,y]_{+,1} = ||y||_1 ( sign(y)^T x + sum_i |x_i| [y_i = 0] ).
double ell1_jmt_closed(const Vector& x, const Vector& y);

// { i : |y_i| >= ||y||_inf - tol }; all indices for y = 0.
std::vector<Index> active_index_set(const Vector& y, double tol = 0.0);

// x_m y_m with m the smallest index attaining |y_m| = ||y||_inf.
double min_index_lg_eval(const Vector& x, const Vector& y);

}  // namespace lognormlab
