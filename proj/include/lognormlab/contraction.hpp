#pragma once

#include <string>
#include <variant>
#include <vector>

#include "lognormlab/lognorm.hpp"

namespace lognormlab {

// Built-in vector fields with analytic Jacobians.
struct LinearField {
  Matrix A;
};
struct AffineField {
  Matrix A;
  Vector b;
};
// x' = A_lin x + S tanh(x); Jacobian A_lin + S diag(1 - tanh^2(x_i)).
struct HopfieldField {
  Matrix A_lin;
  Matrix S;
};

using VectorFieldSpec = std::variant<LinearField, AffineField, HopfieldField>;

Index field_dim(const VectorFieldSpec& vf);
Vector field_eval(const VectorFieldSpec& vf, double t, const Vector& x);
Matrix field_jacobian(const VectorFieldSpec& vf, double t, const Vector& x);

// Central-difference Jacobian, step 1e-6 (1 + |x_i|). Diagnostic only; the
// certification paths use the analytic forms above.
Matrix field_jacobian_fd(const VectorFieldSpec& vf, double t, const Vector& x);

struct Trajectory {
  std::vector<double> times;   // strictly increasing, last entry = t1
  std::vector<Vector> states;  // one per time
  double dt = 0.0;
  int integrator_order = 4;

  const Vector& final_state() const { return states.back(); }
};

// Classical fixed-step RK4 on [t0, t1]; the last step is shortened so the
// trajectory lands on t1 exactly. Throws NumericError (with the time stamp)
// if the state stops being finite, ResourceError if more than 1e7 steps
// would be needed.
Trajectory integrate(const VectorFieldSpec& vf, const Vector& x0, double t0, double t1, double dt);

// Axis-aligned box region.
struct Box {
  Vector lo;
  Vector hi;
};

// b = max over a grid of the box (points_per_axis per dimension) and over
// t_samples of lognorm(norm, Df(t,x)). A certificate up to grid resolution.
// Refuses norms without an exact log-norm path (general p).
double jacobian_mu_bound(const VectorFieldSpec& vf, const NormSpec& norm, const Box& region,
                         int points_per_axis, const std::vector<double>& t_samples = {0.0});

// Sampled one-sided Lipschitz estimate:
// max over (x, y, t) of [[f(t,x) - f(t,y), x - y]] / ||x - y||^2.
double osl_estimate(const VectorFieldSpec& vf, const PairingSpec& pairing, const Box& region,
                    std::uint64_t seed, long count, const std::vector<double>& t_samples = {0.0});

struct ConditionRecord {
  std::string name;
  bool pass = true;
  double worst_margin = 0.0;  // positive = violation
  std::string detail;
};

struct ContractionReport {
  double b_used = 0.0;
  std::vector<ConditionRecord> conditions;
  bool all_pass() const;
};

// Integrates two trajectories and checks, on the shared grid,
//   exponential envelope: ||D(t)|| <= e^{b(t-s)} ||D(s)|| (1 + tol_int)
//     for all grid pairs s <= t, tol_int = 100 dt^4 (t1 - t0);
//   Dini decay: (||D(t+dt)|| - ||D(t)||)/dt <= b ||D(t)|| + allowance,
//     allowance = 50 dt (1 + ||D(t)||).
// Forward invariance of the region is an assumption, not checked here.
ContractionReport contraction_verify(const VectorFieldSpec& vf, const NormSpec& norm,
                                     const Vector& x0, const Vector& y0, double t0, double t1,
                                     double dt, double b);

}  // namespace lognormlab
