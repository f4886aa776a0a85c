#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lognormlab/pairings.hpp"

namespace lognormlab {

// Tolerance ladder: algebraic identities, one-sided limits, Lumer
// comparisons, curve derivatives. Each extra layer of numeric
// differentiation gets one rung.
inline constexpr double kAlgebraicTol = 1e-9;
inline constexpr double kOneSidedTol = 1e-6;
inline constexpr double kLumerTol = 1e-7;
inline constexpr double kCurveTol = 1e-5;

// D_+, D^+, D_-, D^- of a scalar function at a point.
struct DiniQuad {
  double d_plus_lower = 0.0;   // liminf, h -> 0+
  double d_plus_upper = 0.0;   // limsup, h -> 0+
  double d_minus_lower = 0.0;  // liminf, h -> 0-
  double d_minus_upper = 0.0;  // limsup, h -> 0-
};

const std::vector<double>& default_dini_schedule();  // h = 2^-k, k = 12..26

// Running min/max of one-sided difference quotients over the converged
// suffix of the schedule (h clamped above 2^-26 so rounding noise in f
// cannot dominate the quotients; large-h entries that have not settled are
// dropped, which keeps a kink just off t from contaminating the estimate).
DiniQuad dini_estimate(const std::function<double(double)>& f, double t,
                       const std::vector<double>& schedule = default_dini_schedule());

struct CheckRecord {
  std::string name;
  bool pass = true;
  long samples = 0;
  double tolerance = 0.0;
  double worst_violation = 0.0;  // positive means a genuine violation
  std::string counterexample;    // replayable inputs + seed; empty when pass
};

struct RegularityReport {
  std::string pairing_kind;
  std::uint64_t seed = 0;
  CheckRecord wp_axioms;
  CheckRecord straight_angle;          // (i)
  CheckRecord partial_linearity;       // (ii)
  CheckRecord jmt_domination;          // (iii)
  CheckRecord lumer_inequality;        // (iv)
  CheckRecord curve_norm_derivative;   // (v)
  CheckRecord affine_curve_norm;       // (vi)
  CheckRecord lumer_equality;          // (vii)
  bool lg_representable = false;
  CheckRecord lg_check;
  double lumer_gap_delta = 0.0;  // mu(A) - sampled sup, reported not asserted

  std::vector<const CheckRecord*> seven() const;
  bool all_pass() const;  // wp axioms and the seven equivalent conditions
};

struct RegularityOptions {
  Index dim = 4;          // used when the pairing does not pin a dimension
  double scale = 1.5;     // sampler scale
  long count = 10000;     // samples for per-sample checks
  std::uint64_t seed = 0;
  double tol_scale = 1.0;        // multiplier on the tolerance ladder
  long lumer_matrices = 8;       // random A for (iv)
  long lumer_x_per_matrix = 48;  // unit x per A for (iv)
  long lumer_sup_count = 2000;   // sampled sup size for (vii)
  int curve_grid = 41;           // grid points per curve
};

// Weak-pairing axioms (subadditivity, weak homogeneity, positive
// definiteness with norm compatibility, Cauchy-Schwarz) plus the
// Lipschitz-in-first-argument bound with constant ||y||.
CheckRecord check_wp_axioms(const PairingSpec& pairing, const RegularityOptions& opts);

// Oddness in the first argument, [[-x,y]] = -[[x,y]]; regular pairings with
// this property are exactly the LG pairings (real case).
CheckRecord check_lg_representability(const PairingSpec& pairing, const RegularityOptions& opts);

// A differentiable curve with its analytic derivative.
struct Curve {
  std::string name;
  std::function<Vector(double)> x;
  std::function<Vector(double)> xdot;
  double t_lo = -1.0;
  double t_hi = 1.0;
};

// Affine, polynomial, and trigonometric coordinates, two seeded instances
// each.
std::vector<Curve> builtin_curve_suite(Index n, std::uint64_t seed);

// The seven equivalent regularity conditions, property-tested on sampled
// data, plus the WP axioms and the LG-representability probe.
RegularityReport check_regularity(const PairingSpec& pairing, const RegularityOptions& opts,
                                  const std::vector<Curve>* curves = nullptr);

// Per-grid-point comparison of f D+f / f D-f against the numeric JMT
// pairings, of the central difference of 1/2 f^2 against the pairing (at
// stable points only), and of the Dini quadruple against +-||xdot||.
CheckRecord curve_norm_check(const NormSpec& norm, const PairingSpec& pairing, const Curve& curve,
                             const std::vector<double>& grid);

struct UniquenessProbe {
  long samples = 0;
  long disagreements = 0;
  double fraction = 0.0;
  std::vector<std::string> examples;  // up to five serialized disagreeing pairs
};

// Fraction of sampled (x, y) where two pairings over the same norm differ
// by more than tol. adversarial_rate > 0 mixes in tie/zero/sign atoms.
UniquenessProbe almost_uniqueness_probe(const PairingSpec& p1, const PairingSpec& p2,
                                        std::uint64_t seed, long count, double tol,
                                        Index dim = 4, double adversarial_rate = 0.0);

struct DiscontinuityProbe {
  double value_at_zero = 0.0;
  double right_estimate = 0.0;  // [[x, x + t y]] at t = +t_small
  double left_estimate = 0.0;   // at t = -t_small
  double jump = 0.0;            // largest deviation from the t = 0 value
};

// Diagnostic for second-argument discontinuity of pairings on
// non-differentiable norms: samples t -> [[x, x + t y]] next to t = 0.
// Reported, never asserted; no quantitative jump is guaranteed.
DiscontinuityProbe second_arg_discontinuity_probe(const PairingSpec& pairing, const Vector& x,
                                                  const Vector& y, double t_small = 1e-9);

struct OrthogonalityVerdict {
  bool pairing_vanishes = false;  // all grid values within tolerance of 0
  bool norm_constant = false;     // max-min of ||x0 + t v|| within tolerance
  bool v_is_zero = false;
  double worst_pairing_value = 0.0;
  double norm_spread = 0.0;
};

// Evaluates [[v, x0 + t v]] on the grid and compares the three equivalent
// statements: vanishing pairing a.e., constant norm, v = 0.
OrthogonalityVerdict orthogonality_check(const PairingSpec& pairing, const Vector& x0,
                                         const Vector& v, const std::vector<double>& grid,
                                         double tol = kAlgebraicTol);

}  // namespace lognormlab
