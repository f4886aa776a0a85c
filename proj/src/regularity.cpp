#include "lognormlab/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lognormlab/lognorm.hpp"
#include "lognormlab/parallel.hpp"
#include "lognormlab/sampling.hpp"

namespace lognormlab {

namespace {

std::string vec_str(const Vector& v) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

Index effective_dim(const PairingSpec& pairing, const RegularityOptions& opts) {
  if (auto n = pairing_dim(pairing)) return *n;
  return opts.dim;
}

// The closed-form pairings meet algebraic identities at 1e-9; the numeric
// jmt+/jmt- kinds carry one-sided-limit estimation error and get the 1e-6
// rung instead.
double algebraic_tol_for(const PairingSpec& p) {
  return (std::holds_alternative<JmtUpperPairing>(p) || std::holds_alternative<JmtLowerPairing>(p))
             ? kOneSidedTol
             : kAlgebraicTol;
}

// Per-sample violation harness: runs body(i) -> (violation, maker of a
// counterexample string), keeps the worst, fills a CheckRecord. body must
// be deterministic in i so the counterexample can be replayed.
struct SampleHarness {
  std::vector<double> violations;

  CheckRecord run(const std::string& name, long count, double tol,
                  const std::function<double(std::size_t)>& violation_of,
                  const std::function<std::string(std::size_t)>& describe) {
    violations.assign(static_cast<std::size_t>(count), 0.0);
    parallel_for(static_cast<std::size_t>(count),
                 [&](std::size_t i) { violations[i] = violation_of(i); });
    CheckRecord rec;
    rec.name = name;
    rec.samples = count;
    rec.tolerance = tol;
    std::size_t worst = 0;
    for (std::size_t i = 1; i < violations.size(); ++i)
      if (violations[i] > violations[worst]) worst = i;
    rec.worst_violation = violations.empty() ? 0.0 : violations[worst];
    rec.pass = rec.worst_violation <= 0.0;
    if (!rec.pass) rec.counterexample = describe(worst);
    return rec;
  }
};

constexpr std::uint64_t kTagAxioms = 0xA10;
constexpr std::uint64_t kTagStraight = 0xA11;
constexpr std::uint64_t kTagLinear = 0xA12;
constexpr std::uint64_t kTagDominate = 0xA13;
constexpr std::uint64_t kTagLumer = 0xA14;
constexpr std::uint64_t kTagLumerEq = 0xA15;
constexpr std::uint64_t kTagLg = 0xA16;
constexpr std::uint64_t kTagCurve = 0xA17;
constexpr std::uint64_t kTagUnique = 0xA18;

}  // namespace

const std::vector<double>& default_dini_schedule() {
  static const std::vector<double> schedule = power_schedule(12, 26);
  return schedule;
}

namespace {

// Running min/max over the converged suffix of the quotient sequence: walk
// back from the smallest usable h while consecutive quotients agree within
// the rounding allowance. A kink slightly off t poisons the large-h
// quotients; the suffix rule drops them, the same way the JMT estimator
// trusts only the settled tail.
std::pair<double, double> tail_min_max(const std::vector<double>& qs,
                                       const std::vector<double>& hs, double f_scale) {
  std::size_t last = qs.size() - 1;
  double lo = qs[last], hi = qs[last];
  std::size_t used = 1;
  for (std::size_t k = last; k-- > 0 && used < 8;) {
    double noise = 1e-6 * (1.0 + std::abs(qs[last])) + 8.0 * 2.2e-16 * f_scale / hs[k];
    if (std::abs(qs[k] - qs[last]) > noise) break;
    lo = std::min(lo, qs[k]);
    hi = std::max(hi, qs[k]);
    ++used;
  }
  return {lo, hi};
}

}  // namespace

DiniQuad dini_estimate(const std::function<double(double)>& f, double t,
                       const std::vector<double>& schedule) {
  if (schedule.empty()) throw InputError("dini_estimate: empty schedule");
  const double h_floor = std::ldexp(1.0, -26);
  std::vector<double> hs;
  for (double h : schedule)
    if (h >= h_floor) hs.push_back(h);
  if (hs.empty()) hs.push_back(h_floor);
  const double f0 = f(t);
  std::vector<double> qp(hs.size()), qm(hs.size());
  for (std::size_t k = 0; k < hs.size(); ++k) {
    qp[k] = (f(t + hs[k]) - f0) / hs[k];
    qm[k] = (f(t - hs[k]) - f0) / (-hs[k]);
  }
  double f_scale = 1.0 + std::abs(f0);
  auto [pl, pu] = tail_min_max(qp, hs, f_scale);
  auto [ml, mu] = tail_min_max(qm, hs, f_scale);
  return {pl, pu, ml, mu};
}

std::vector<const CheckRecord*> RegularityReport::seven() const {
  return {&straight_angle,        &partial_linearity, &jmt_domination, &lumer_inequality,
          &curve_norm_derivative, &affine_curve_norm, &lumer_equality};
}

bool RegularityReport::all_pass() const {
  if (!wp_axioms.pass) return false;
  for (const auto* c : seven())
    if (!c->pass) return false;
  return true;
}

CheckRecord check_wp_axioms(const PairingSpec& pairing, const RegularityOptions& opts) {
  ensure_valid(pairing);
  const Index n = effective_dim(pairing, opts);
  const NormSpec norm = compatible_norm(pairing);
  const double tol = algebraic_tol_for(pairing) * opts.tol_scale;

  auto sample = [&](std::size_t i) {
    VectorSampler s(derive_seed(opts.seed ^ kTagAxioms, i), n, opts.scale);
    Vector x1 = s.next(), x2 = s.next(), y = s.next();
    Rng r(derive_seed(opts.seed ^ (kTagAxioms + 1), i));
    double alpha = r.uniform(0.0, 3.0);
    return std::tuple{x1, x2, y, alpha};
  };

  auto violation = [&](std::size_t i) -> double {
    auto [x1, x2, y, alpha] = sample(i);
    double nx1 = norm_eval(norm, x1), nx2 = norm_eval(norm, x2), ny = norm_eval(norm, y);
    double slack = tol * (1.0 + (nx1 + nx2) * ny);
    double worst = pairing_eval(pairing, x1 + x2, y) - pairing_eval(pairing, x1, y) -
                   pairing_eval(pairing, x2, y) - slack;
    // weak homogeneity, both slots, and the double flip
    double pxy = pairing_eval(pairing, x1, y);
    double s2 = tol * (1.0 + (1.0 + alpha) * nx1 * ny);
    worst = std::max(worst, std::abs(pairing_eval(pairing, alpha * x1, y) - alpha * pxy) - s2);
    worst = std::max(worst, std::abs(pairing_eval(pairing, x1, alpha * y) - alpha * pxy) - s2);
    worst = std::max(worst, std::abs(pairing_eval(pairing, -x1, -y) - pxy) - s2);
    // positive definiteness + compatibility with the induced norm
    double pxx = pairing_eval(pairing, x1, x1);
    if (nx1 > 1e-12) worst = std::max(worst, -pxx + 1e-300);
    worst = std::max(worst, std::abs(pxx - nx1 * nx1) - 1e-10 * (1.0 + nx1 * nx1));
    // Cauchy-Schwarz
    worst = std::max(worst, pxy - nx1 * ny - tol * (1.0 + nx1 * ny));
    // Lipschitz in the first argument, constant ||y||
    double lip = std::abs(pairing_eval(pairing, x1, y) - pairing_eval(pairing, x2, y));
    double nd = norm_eval(norm, x1 - x2);
    worst = std::max(worst, lip - nd * ny - tol * (1.0 + nd * ny));
    return worst;
  };

  auto describe = [&](std::size_t i) {
    auto [x1, x2, y, alpha] = sample(i);
    std::ostringstream os;
    os << "{\"i\":" << i << ",\"x1\":" << vec_str(x1) << ",\"x2\":" << vec_str(x2)
       << ",\"y\":" << vec_str(y) << ",\"alpha\":" << alpha << "}";
    return os.str();
  };

  SampleHarness h;
  return h.run("wp_axioms", opts.count, tol, violation, describe);
}

CheckRecord check_lg_representability(const PairingSpec& pairing, const RegularityOptions& opts) {
  const Index n = effective_dim(pairing, opts);
  const NormSpec norm = compatible_norm(pairing);
  const double tol = algebraic_tol_for(pairing) * opts.tol_scale;
  auto sample = [&](std::size_t i) {
    VectorSampler s(derive_seed(opts.seed ^ kTagLg, i), n, opts.scale);
    Vector x = s.next(), y = s.next();
    return std::pair{x, y};
  };
  auto violation = [&](std::size_t i) {
    auto [x, y] = sample(i);
    double slack = tol * (1.0 + norm_eval(norm, x) * norm_eval(norm, y));
    return std::abs(pairing_eval(pairing, -x, y) + pairing_eval(pairing, x, y)) - slack;
  };
  auto describe = [&](std::size_t i) {
    auto [x, y] = sample(i);
    std::ostringstream os;
    os << "{\"i\":" << i << ",\"x\":" << vec_str(x) << ",\"y\":" << vec_str(y) << "}";
    return os.str();
  };
  SampleHarness h;
  return h.run("lg_oddness", opts.count, tol, violation, describe);
}

std::vector<Curve> builtin_curve_suite(Index n, std::uint64_t seed) {
  std::vector<Curve> curves;
  for (int inst = 0; inst < 2; ++inst) {
    Rng r(derive_seed(seed ^ kTagCurve, static_cast<std::uint64_t>(inst)));
    Vector x0 = r.normal_vector(n), v = r.normal_vector(n);
    curves.push_back({"affine_" + std::to_string(inst),
                      [x0, v](double t) -> Vector { return x0 + t * v; },
                      [v](double) -> Vector { return v; }});

    Vector c0 = r.normal_vector(n), c1 = r.normal_vector(n), c2 = r.normal_vector(n),
           c3 = r.normal_vector(n);
    curves.push_back({"poly_" + std::to_string(inst),
                      [c0, c1, c2, c3](double t) -> Vector {
                        return c0 + t * c1 + t * t * c2 + t * t * t * c3;
                      },
                      [c1, c2, c3](double t) -> Vector {
                        return c1 + 2.0 * t * c2 + 3.0 * t * t * c3;
                      }});

    Vector a = r.normal_vector(n), b = r.normal_vector(n);
    Vector w(n);
    for (Index i = 0; i < n; ++i) w[i] = 1.0 + static_cast<double>(r.uniform_index(3));
    curves.push_back({"trig_" + std::to_string(inst),
                      [a, b, w](double t) -> Vector {
                        Vector out(a.size());
                        for (Index i = 0; i < a.size(); ++i)
                          out[i] = a[i] * std::cos(w[i] * t) + b[i] * std::sin(w[i] * t);
                        return out;
                      },
                      [a, b, w](double t) -> Vector {
                        Vector out(a.size());
                        for (Index i = 0; i < a.size(); ++i)
                          out[i] = w[i] * (-a[i] * std::sin(w[i] * t) + b[i] * std::cos(w[i] * t));
                        return out;
                      }});
  }
  return curves;
}

CheckRecord curve_norm_check(const NormSpec& norm, const PairingSpec& pairing, const Curve& curve,
                             const std::vector<double>& grid) {
  CheckRecord rec;
  rec.name = "curve_norm[" + curve.name + "]";
  rec.tolerance = kCurveTol;
  auto f = [&](double t) { return norm_eval(norm, curve.x(t)); };
  for (double t : grid) {
    ++rec.samples;
    Vector xt = curve.x(t);
    Vector xd = curve.xdot(t);
    double ft = f(t);
    double nxd = norm_eval(norm, xd);
    double scale = 1.0 + ft * nxd;

    DiniQuad q = dini_estimate(f, t);
    double dini_mag = std::max({std::abs(q.d_plus_lower), std::abs(q.d_plus_upper),
                                std::abs(q.d_minus_lower), std::abs(q.d_minus_upper)});
    // |Dini f| <= ||xdot|| can hold with equality; the quotient estimates
    // then overshoot by their own resolution, which has to be part of the
    // allowance on top of the 1e-7 slack.
    double dini_noise = 2e-6 * (1.0 + dini_mag) + 2e-7 * (1.0 + ft);
    double v = dini_mag - nxd - kLumerTol - dini_noise;

    // f D+f = [xdot, x]_+ and f D-f = [xdot, x]_- hold at every t.
    double up = jmt_upper(norm, xd, xt);
    double lo = jmt_lower(norm, xd, xt);
    v = std::max(v, std::abs(ft * q.d_plus_upper - up) - kCurveTol * scale);
    v = std::max(v, std::abs(ft * q.d_plus_lower - up) - kCurveTol * scale);
    v = std::max(v, std::abs(ft * q.d_minus_upper - lo) - kCurveTol * scale);
    v = std::max(v, std::abs(ft * q.d_minus_lower - lo) - kCurveTol * scale);

    // 1/2 d/dt f^2 = [[xdot, x]] where the derivative exists. Nested central
    // differences of f^2 converge to the average slope even across a kink,
    // so agreement of the one-sided quotients is required as well before the
    // point counts as stable.
    auto g = [&](double s) {
      double fs = f(s);
      return 0.5 * fs * fs;
    };
    double d1 = (g(t + 1e-3) - g(t - 1e-3)) / 2e-3;
    double d2 = (g(t + 5e-4) - g(t - 5e-4)) / 1e-3;
    double d3 = (g(t + 2.5e-4) - g(t - 2.5e-4)) / 5e-4;
    double spread = std::max({std::abs(d1 - d2), std::abs(d2 - d3), std::abs(d1 - d3)});
    double one_sided_gap =
        ft * std::max({q.d_plus_upper, q.d_minus_upper}) -
        ft * std::min({q.d_plus_lower, q.d_minus_lower});
    if (spread <= 10.0 * kCurveTol * scale && std::abs(one_sided_gap) <= 10.0 * kCurveTol * scale) {
      double pv = pairing_eval(pairing, xd, xt);
      v = std::max(v, std::abs(d3 - pv) - kCurveTol * scale);
    }

    if (v > rec.worst_violation) {
      rec.worst_violation = v;
      if (v > 0.0) {
        std::ostringstream os;
        os << "{\"curve\":\"" << curve.name << "\",\"t\":" << t << "}";
        rec.counterexample = os.str();
      }
    }
  }
  rec.pass = rec.worst_violation <= 0.0;
  return rec;
}

RegularityReport check_regularity(const PairingSpec& pairing, const RegularityOptions& opts,
                                  const std::vector<Curve>* curves) {
  ensure_valid(pairing);
  const Index n = effective_dim(pairing, opts);
  const NormSpec norm = compatible_norm(pairing);
  RegularityReport rep;
  rep.pairing_kind = pairing_kind_name(pairing);
  rep.seed = opts.seed;
  const double alg_tol = algebraic_tol_for(pairing) * opts.tol_scale;
  const double one_sided_tol = kOneSidedTol * opts.tol_scale;
  const double lumer_tol = kLumerTol * opts.tol_scale;

  rep.wp_axioms = check_wp_axioms(pairing, opts);
  rep.lg_check = check_lg_representability(pairing, opts);
  rep.lg_representable = rep.lg_check.pass;

  // (i) straight angle
  {
    auto sample = [&](std::size_t i) {
      VectorSampler s(derive_seed(opts.seed ^ kTagStraight, i), n, opts.scale);
      return s.next();
    };
    SampleHarness h;
    rep.straight_angle = h.run(
        "straight_angle", opts.count, alg_tol,
        [&](std::size_t i) {
          Vector x = sample(i);
          double nx = norm_eval(norm, x);
          return std::abs(pairing_eval(pairing, -x, x) + nx * nx) - alg_tol * (1.0 + nx * nx);
        },
        [&](std::size_t i) {
          return "{\"x\":" + vec_str(sample(i)) + "}";
        });
  }

  // (ii) partial linearity in the first argument
  {
    auto sample = [&](std::size_t i) {
      VectorSampler s(derive_seed(opts.seed ^ kTagLinear, i), n, opts.scale);
      Vector x = s.next(), y = s.next();
      Rng r(derive_seed(opts.seed ^ (kTagLinear + 1), i));
      double a = r.uniform(-3.0, 3.0);
      return std::tuple{x, y, a};
    };
    SampleHarness h;
    rep.partial_linearity = h.run(
        "partial_linearity", opts.count, alg_tol,
        [&](std::size_t i) {
          auto [x, y, a] = sample(i);
          double ny = norm_eval(norm, y);
          double scale = 1.0 + norm_eval(norm, x) * ny + std::abs(a) * ny * ny;
          return std::abs(pairing_eval(pairing, x + a * y, y) - pairing_eval(pairing, x, y) -
                          a * ny * ny) -
                 alg_tol * scale;
        },
        [&](std::size_t i) {
          auto [x, y, a] = sample(i);
          std::ostringstream os;
          os << "{\"x\":" << vec_str(x) << ",\"y\":" << vec_str(y) << ",\"a\":" << a << "}";
          return os.str();
        });
  }

  // (iii) domination by the JMT pairings:
  //       [[x,y]]_- <= -[[-x,y]] <= [[x,y]] <= [[x,y]]_+
  {
    auto sample = [&](std::size_t i) {
      VectorSampler s(derive_seed(opts.seed ^ kTagDominate, i), n, opts.scale);
      Vector x = s.next(), y = s.next();
      return std::pair{x, y};
    };
    SampleHarness h;
    rep.jmt_domination = h.run(
        "jmt_domination", opts.count, one_sided_tol,
        [&](std::size_t i) {
          auto [x, y] = sample(i);
          double slack = one_sided_tol * (1.0 + norm_eval(norm, x) * norm_eval(norm, y));
          double up = jmt_upper(norm, x, y);
          double lo = jmt_lower(norm, x, y);
          double mid_hi = pairing_eval(pairing, x, y);
          double mid_lo = -pairing_eval(pairing, -x, y);
          double v = lo - mid_lo - slack;
          v = std::max(v, mid_lo - mid_hi - slack);
          v = std::max(v, mid_hi - up - slack);
          return v;
        },
        [&](std::size_t i) {
          auto [x, y] = sample(i);
          return "{\"x\":" + vec_str(x) + ",\"y\":" + vec_str(y) + "}";
        });
  }

  // (iv) one-sided Lumer inequality on random operators
  {
    CheckRecord rec;
    rec.name = "lumer_inequality";
    rec.tolerance = lumer_tol;
    for (long k = 0; k < opts.lumer_matrices; ++k) {
      Rng r(derive_seed(opts.seed ^ kTagLumer, static_cast<std::uint64_t>(k)));
      Matrix A = r.uniform_matrix(n, n, -2.0, 2.0);
      std::vector<Vector> xs;
      VectorSampler s(derive_seed(opts.seed ^ (kTagLumer + 1), static_cast<std::uint64_t>(k)), n,
                      opts.scale);
      for (long j = 0; j < opts.lumer_x_per_matrix; ++j) {
        Vector x = s.next();
        double nx = norm_eval(norm, x);
        if (nx == 0.0) continue;
        xs.push_back(x / nx);
      }
      bool exact = false;
      double mu = mu_reference(norm, A, &exact, opts.seed ^ kTagLumer, &xs);
      for (const auto& x : xs) {
        ++rec.samples;
        double v = pairing_eval(pairing, A * x, x) - mu - lumer_tol * (1.0 + std::abs(mu));
        if (v > rec.worst_violation) {
          rec.worst_violation = v;
          rec.counterexample = "{\"A_seed_index\":" + std::to_string(k) +
                               ",\"x\":" + vec_str(x) + ",\"mu\":" + std::to_string(mu) + "}";
        }
      }
    }
    rec.pass = rec.worst_violation <= 0.0;
    if (rec.pass) rec.counterexample.clear();
    rep.lumer_inequality = rec;
  }

  // (v) + (vi) curve norm derivative, full suite and affine restriction
  {
    std::vector<Curve> suite = curves ? *curves : builtin_curve_suite(n, opts.seed);
    std::vector<double> grid;
    for (int i = 0; i < opts.curve_grid; ++i) {
      double t = -1.0 + 2.0 * static_cast<double>(i) / (opts.curve_grid - 1);
      grid.push_back(t + 0.0123456789);  // nudge off symmetric crossings
    }
    CheckRecord all;
    all.name = "curve_norm_derivative";
    all.tolerance = kCurveTol;
    CheckRecord aff;
    aff.name = "affine_curve_norm";
    aff.tolerance = kCurveTol;
    for (const auto& c : suite) {
      CheckRecord sub = curve_norm_check(norm, pairing, c, grid);
      bool is_affine = c.name.rfind("affine", 0) == 0;
      auto fold = [&](CheckRecord& into) {
        into.samples += sub.samples;
        if (sub.worst_violation > into.worst_violation) {
          into.worst_violation = sub.worst_violation;
          into.counterexample = sub.counterexample;
        }
      };
      fold(all);
      if (is_affine) fold(aff);
    }
    all.pass = all.worst_violation <= 0.0;
    aff.pass = aff.worst_violation <= 0.0;
    rep.curve_norm_derivative = all;
    rep.affine_curve_norm = aff;
  }

  // (vii) Lumer equality: sampled sup vs reference mu, one-sided assert,
  //       gap delta reported; exact witness check for the sign/max cases.
  {
    CheckRecord rec;
    rec.name = "lumer_equality";
    rec.tolerance = lumer_tol;
    double worst_delta = 0.0;
    for (long k = 0; k < 3; ++k) {
      Rng r(derive_seed(opts.seed ^ kTagLumerEq, static_cast<std::uint64_t>(k)));
      Matrix A = r.uniform_matrix(n, n, -2.0, 2.0);
      LumerEstimate est =
          lumer_sup_estimate(pairing, A, opts.seed ^ (kTagLumerEq + k), opts.lumer_sup_count);
      std::vector<Vector> starts = {est.witness};
      bool exact = false;
      double mu = mu_reference(norm, A, &exact, opts.seed ^ kTagLumerEq, &starts);
      ++rec.samples;
      double v = est.value - mu - lumer_tol * (1.0 + std::abs(mu));
      worst_delta = std::max(worst_delta, mu - est.value);
      if (v > rec.worst_violation) {
        rec.worst_violation = v;
        rec.counterexample =
            "{\"A_seed_index\":" + std::to_string(k) + ",\"sup\":" + std::to_string(est.value) +
            ",\"mu\":" + std::to_string(mu) + "}";
      }
      if (std::holds_alternative<MaxPairing>(pairing)) {
        Vector w = lumer_witness(norm, A);
        double got = pairing_eval(pairing, A * w, w);
        double want = mu_inf_formula(A);
        double wv = std::abs(got - want) - 1e-12 * (1.0 + std::abs(want));
        if (wv > rec.worst_violation) {
          rec.worst_violation = wv;
          rec.counterexample = "{\"witness_check\":\"linf\",\"A_seed_index\":" +
                               std::to_string(k) + "}";
        }
      } else if (std::holds_alternative<SignPairing>(pairing)) {
        const double eps = 1e-4;
        Vector w = lumer_witness(norm, A, eps);
        double got = pairing_eval(pairing, A * w, w);
        double want = mu_one_formula(A);
        double bound = 2.0 * static_cast<double>(n) * A.cwiseAbs().maxCoeff() * eps;
        double wv = (want - bound - 1e-12) - got;
        if (wv > rec.worst_violation) {
          rec.worst_violation = wv;
          rec.counterexample = "{\"witness_check\":\"l1\",\"A_seed_index\":" + std::to_string(k) +
                               "}";
        }
      }
    }
    rec.pass = rec.worst_violation <= 0.0;
    if (rec.pass) rec.counterexample.clear();
    rep.lumer_equality = rec;
    rep.lumer_gap_delta = worst_delta;
  }

  return rep;
}

UniquenessProbe almost_uniqueness_probe(const PairingSpec& p1, const PairingSpec& p2,
                                        std::uint64_t seed, long count, double tol, Index dim,
                                        double adversarial_rate) {
  NormSpec n1 = compatible_norm(p1);
  NormSpec n2 = compatible_norm(p2);
  if (!norm_spec_equal(n1, n2))
    throw InputError("almost_uniqueness_probe: pairings have different compatible norms (" +
                     norm_kind_name(n1) + " vs " + norm_kind_name(n2) + ")");
  if (auto d = pairing_dim(p1)) dim = *d;
  UniquenessProbe probe;
  probe.samples = count;
  for (long i = 0; i < count; ++i) {
    VectorSampler s(derive_seed(seed ^ kTagUnique, static_cast<std::uint64_t>(i)), dim, 1.0,
                    adversarial_rate);
    Vector x = s.next(), y = s.next();
    double a = pairing_eval(p1, x, y);
    double b = pairing_eval(p2, x, y);
    if (std::abs(a - b) > tol) {
      ++probe.disagreements;
      if (probe.examples.size() < 5) {
        std::ostringstream os;
        os.precision(17);
        os << "{\"x\":" << vec_str(x) << ",\"y\":" << vec_str(y) << ",\"p1\":" << a
           << ",\"p2\":" << b << "}";
        probe.examples.push_back(os.str());
      }
    }
  }
  probe.fraction = count > 0 ? static_cast<double>(probe.disagreements) / count : 0.0;
  return probe;
}

DiscontinuityProbe second_arg_discontinuity_probe(const PairingSpec& pairing, const Vector& x,
                                                  const Vector& y, double t_small) {
  if (!(t_small > 0.0)) throw InputError("second_arg_discontinuity_probe: t_small must be > 0");
  DiscontinuityProbe probe;
  probe.value_at_zero = pairing_eval(pairing, x, x);
  probe.right_estimate = pairing_eval(pairing, x, x + t_small * y);
  probe.left_estimate = pairing_eval(pairing, x, x - t_small * y);
  probe.jump = std::max(std::abs(probe.right_estimate - probe.value_at_zero),
                        std::abs(probe.left_estimate - probe.value_at_zero));
  return probe;
}

OrthogonalityVerdict orthogonality_check(const PairingSpec& pairing, const Vector& x0,
                                         const Vector& v, const std::vector<double>& grid,
                                         double tol) {
  const NormSpec norm = compatible_norm(pairing);
  OrthogonalityVerdict verdict;
  verdict.v_is_zero = v.isZero(0.0);
  double scale = 1.0 + norm_eval(norm, x0) * norm_eval(norm, v);
  double fmin = std::numeric_limits<double>::infinity();
  double fmax = -fmin;
  for (double t : grid) {
    Vector xt = x0 + t * v;
    double p = std::abs(pairing_eval(pairing, v, xt));
    verdict.worst_pairing_value = std::max(verdict.worst_pairing_value, p);
    double f = norm_eval(norm, xt);
    fmin = std::min(fmin, f);
    fmax = std::max(fmax, f);
  }
  verdict.norm_spread = fmax - fmin;
  verdict.pairing_vanishes = verdict.worst_pairing_value <= tol * scale;
  verdict.norm_constant = verdict.norm_spread <= tol * scale;
  return verdict;
}

}  // namespace lognormlab
