#include "lognormlab/contraction.hpp"

#include <cmath>
#include <sstream>

#include "lognormlab/sampling.hpp"

namespace lognormlab {

Index field_dim(const VectorFieldSpec& vf) {
  return std::visit(
      [](const auto& f) -> Index {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LinearField>) return f.A.rows();
        else if constexpr (std::is_same_v<T, AffineField>) return f.A.rows();
        else return f.A_lin.rows();
      },
      vf);
}

Vector field_eval(const VectorFieldSpec& vf, double, const Vector& x) {
  return std::visit(
      [&](const auto& f) -> Vector {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LinearField>) return f.A * x;
        else if constexpr (std::is_same_v<T, AffineField>) return f.A * x + f.b;
        else return f.A_lin * x + f.S * x.array().tanh().matrix();
      },
      vf);
}

Matrix field_jacobian(const VectorFieldSpec& vf, double, const Vector& x) {
  return std::visit(
      [&](const auto& f) -> Matrix {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LinearField>) return f.A;
        else if constexpr (std::is_same_v<T, AffineField>) return f.A;
        else {
          Vector th = x.array().tanh();
          Vector d = (1.0 - th.array().square()).matrix();
          return f.A_lin + f.S * d.asDiagonal();
        }
      },
      vf);
}

Matrix field_jacobian_fd(const VectorFieldSpec& vf, double t, const Vector& x) {
  const Index n = x.size();
  Matrix J(n, n);
  for (Index j = 0; j < n; ++j) {
    double h = 1e-6 * (1.0 + std::abs(x[j]));
    Vector xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    J.col(j) = (field_eval(vf, t, xp) - field_eval(vf, t, xm)) / (2.0 * h);
  }
  return J;
}

Trajectory integrate(const VectorFieldSpec& vf, const Vector& x0, double t0, double t1,
                     double dt) {
  if (!(dt > 0.0)) throw InputError("integrate: dt must be positive");
  if (t1 < t0) throw InputError("integrate: t1 must be >= t0");
  if ((t1 - t0) / dt > 1e7) throw ResourceError("integrate: more than 1e7 steps requested");
  if (x0.size() != field_dim(vf)) throw InputError("integrate: x0 dimension mismatch");

  Trajectory traj;
  traj.dt = dt;
  traj.times.push_back(t0);
  traj.states.push_back(x0);
  double t = t0;
  Vector x = x0;
  auto step = [&](double h) {
    Vector k1 = field_eval(vf, t, x);
    Vector k2 = field_eval(vf, t + 0.5 * h, x + 0.5 * h * k1);
    Vector k3 = field_eval(vf, t + 0.5 * h, x + 0.5 * h * k2);
    Vector k4 = field_eval(vf, t + h, x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
  };
  while (t < t1) {
    double h = std::min(dt, t1 - t);
    step(h);
    if (!x.array().isFinite().all()) {
      std::ostringstream os;
      os << "integrate: non-finite state at t = " << t;
      throw NumericError(os.str());
    }
    if (h == dt && t < t1) {
      traj.times.push_back(t);
      traj.states.push_back(x);
    }
  }
  traj.times.push_back(t1);
  traj.states.push_back(x);
  return traj;
}

double jacobian_mu_bound(const VectorFieldSpec& vf, const NormSpec& norm, const Box& region,
                         int points_per_axis, const std::vector<double>& t_samples) {
  const Index n = field_dim(vf);
  if (region.lo.size() != n || region.hi.size() != n)
    throw InputError("jacobian_mu_bound: region dimension mismatch");
  if (points_per_axis < 1) throw InputError("jacobian_mu_bound: need >= 1 point per axis");
  bool exact = std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LpNorm>) return s.p == 2.0;
        else if constexpr (std::is_same_v<T, LpWeightedNorm>) return s.p == 2.0;
        else return true;
      },
      norm);
  if (!exact)
    throw SpecError(
        "jacobian_mu_bound: no exact log norm for general p; use l1, linf, l2w or poly");

  double total = std::pow(static_cast<double>(points_per_axis), static_cast<double>(n));
  if (total > 1e6) throw ResourceError("jacobian_mu_bound: grid would exceed 1e6 points");

  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  double b = -std::numeric_limits<double>::infinity();
  for (;;) {
    Vector x(n);
    for (Index d = 0; d < n; ++d) {
      double frac = points_per_axis == 1
                        ? 0.5
                        : static_cast<double>(idx[static_cast<std::size_t>(d)]) /
                              (points_per_axis - 1);
      x[d] = region.lo[d] + frac * (region.hi[d] - region.lo[d]);
    }
    for (double t : t_samples) b = std::max(b, lognorm(norm, field_jacobian(vf, t, x)).value);
    Index d = 0;
    while (d < n && ++idx[static_cast<std::size_t>(d)] == points_per_axis) {
      idx[static_cast<std::size_t>(d)] = 0;
      ++d;
    }
    if (d == n) break;
  }
  return b;
}

double osl_estimate(const VectorFieldSpec& vf, const PairingSpec& pairing, const Box& region,
                    std::uint64_t seed, long count, const std::vector<double>& t_samples) {
  const Index n = field_dim(vf);
  if (region.lo.size() != n || region.hi.size() != n)
    throw InputError("osl_estimate: region dimension mismatch");
  const NormSpec norm = compatible_norm(pairing);
  double b_hat = -std::numeric_limits<double>::infinity();
  for (long i = 0; i < count; ++i) {
    Rng r(derive_seed(seed, static_cast<std::uint64_t>(i)));
    Vector x(n), y(n);
    for (Index d = 0; d < n; ++d) {
      x[d] = r.uniform(region.lo[d], region.hi[d]);
      y[d] = r.uniform(region.lo[d], region.hi[d]);
    }
    Vector diff = x - y;
    double nd = norm_eval(norm, diff);
    if (nd == 0.0) continue;  // coincident draw, nothing to measure
    for (double t : t_samples) {
      double num = pairing_eval(pairing, field_eval(vf, t, x) - field_eval(vf, t, y), diff);
      b_hat = std::max(b_hat, num / (nd * nd));
    }
  }
  return b_hat;
}

bool ContractionReport::all_pass() const {
  for (const auto& c : conditions)
    if (!c.pass) return false;
  return true;
}

ContractionReport contraction_verify(const VectorFieldSpec& vf, const NormSpec& norm,
                                     const Vector& x0, const Vector& y0, double t0, double t1,
                                     double dt, double b) {
  ContractionReport rep;
  rep.b_used = b;
  Trajectory tx = integrate(vf, x0, t0, t1, dt);
  Trajectory ty = integrate(vf, y0, t0, t1, dt);
  const std::size_t N = tx.times.size();

  std::vector<double> delta(N);
  for (std::size_t k = 0; k < N; ++k)
    delta[k] = norm_eval(norm, tx.states[k] - ty.states[k]);

  // Envelope: r(t) = ||D(t)|| e^{-b t} must not exceed (1 + tol_int) times
  // the running minimum of r over earlier grid points; that covers every
  // pair s <= t without the quadratic sweep.
  {
    ConditionRecord rec;
    rec.name = "exponential_envelope";
    const double tol_int = 100.0 * dt * dt * dt * dt * (t1 - t0);
    double run_min = std::numeric_limits<double>::infinity();
    std::size_t run_min_at = 0;
    for (std::size_t k = 0; k < N; ++k) {
      double r = delta[k] * std::exp(-b * (tx.times[k] - t0));
      double margin = r - (1.0 + tol_int) * run_min;
      if (margin > rec.worst_margin) {
        rec.worst_margin = margin;
        std::ostringstream os;
        os << "{\"s\":" << tx.times[run_min_at] << ",\"t\":" << tx.times[k]
           << ",\"delta_s\":" << delta[run_min_at] << ",\"delta_t\":" << delta[k] << "}";
        rec.detail = os.str();
      }
      if (r < run_min) {
        run_min = r;
        run_min_at = k;
      }
    }
    rec.pass = rec.worst_margin <= 0.0;
    if (rec.pass) rec.detail.clear();
    rep.conditions.push_back(rec);
  }

  // Grid Dini quotient: (||D(t+dt)|| - ||D(t)||)/dt <= b ||D(t)|| + O(dt).
  {
    ConditionRecord rec;
    rec.name = "dini_decay";
    for (std::size_t k = 0; k + 1 < N; ++k) {
      double h = tx.times[k + 1] - tx.times[k];
      if (h <= 0.0) continue;
      double quot = (delta[k + 1] - delta[k]) / h;
      double allowance = 50.0 * h * (1.0 + delta[k]);
      double margin = quot - b * delta[k] - allowance;
      if (margin > rec.worst_margin) {
        rec.worst_margin = margin;
        std::ostringstream os;
        os << "{\"t\":" << tx.times[k] << ",\"quotient\":" << quot << "}";
        rec.detail = os.str();
      }
    }
    rec.pass = rec.worst_margin <= 0.0;
    if (rec.pass) rec.detail.clear();
    rep.conditions.push_back(rec);
  }
  return rep;
}

}  // namespace lognormlab
