#include "lognormlab/lognorm.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <sstream>

#include "lognormlab/lpsolve.hpp"
#include "lognormlab/sampling.hpp"

namespace lognormlab {

namespace {

void check_square(const NormSpec& spec, const Matrix& A) {
  if (A.rows() != A.cols()) throw InputError("lognorm: A must be square");
  if (auto n = norm_dim(spec); n && *n != A.rows())
    throw InputError("lognorm: A is " + std::to_string(A.rows()) + "x" +
                     std::to_string(A.cols()) + ", spec expects n = " + std::to_string(*n));
}

double sigma_max(const Matrix& M) {
  Eigen::JacobiSVD<Matrix> svd(M);
  return svd.singularValues()(0);
}

double half_lambda_max_sym(const Matrix& M) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (M + M.transpose()));
  return es.eigenvalues().maxCoeff();
}

Matrix inverse_of(const Matrix& R) { return R.partialPivLu().inverse(); }

// Unit vector in the spec's norm from an unnormalized draw.
Vector normalize_in(const NormSpec& spec, Vector x) {
  double nx = norm_eval(spec, x);
  if (nx == 0.0) {
    x.setZero();
    x[0] = 1.0;
    nx = norm_eval(spec, x);
  }
  return x / nx;
}

// Sampled sup of ||M xhat|| over unit xhat, with a short hill climb around
// the best sample. A lower bound on the induced norm.
double sampled_induced_norm(const NormSpec& spec, const Matrix& M, std::uint64_t seed,
                            int sphere_samples) {
  const Index n = M.cols();
  VectorSampler sampler(derive_seed(seed, 0x496e644eULL), n);
  double best = 0.0;
  Vector best_x = Vector::Unit(n, 0);
  for (int s = 0; s < sphere_samples; ++s) {
    Vector x = normalize_in(spec, sampler.next());
    double v = norm_eval(spec, M * x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  Rng rng(derive_seed(seed, 0x526566ULL));
  double step = 0.5;
  for (int it = 0; it < 400; ++it) {
    Vector x = normalize_in(spec, best_x + step * rng.normal_vector(n));
    double v = norm_eval(spec, M * x);
    if (v > best) {
      best = v;
      best_x = x;
    } else {
      step *= 0.97;
    }
  }
  return best;
}

}  // namespace

const char* to_string(LogNormMethod m) {
  switch (m) {
    case LogNormMethod::closed_form: return "closed_form";
    case LogNormMethod::lp_program: return "lp_program";
    case LogNormMethod::limit_oracle: return "limit_oracle";
    default: return "lumer_sampled";
  }
}

double induced_norm(const NormSpec& spec, const Matrix& M, bool* exact, std::uint64_t seed,
                    int sphere_samples) {
  check_square(spec, M);
  if (exact) *exact = true;
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, L1Norm>) {
          return M.cwiseAbs().colwise().sum().maxCoeff();
        } else if constexpr (std::is_same_v<T, LinfNorm>) {
          return M.cwiseAbs().rowwise().sum().maxCoeff();
        } else if constexpr (std::is_same_v<T, LpNorm>) {
          if (s.p == 2.0) return sigma_max(M);
          if (exact) *exact = false;
          return sampled_induced_norm(spec, M, seed, sphere_samples);
        } else if constexpr (std::is_same_v<T, L2WeightedNorm>) {
          return sigma_max(s.R * M * inverse_of(s.R));
        } else if constexpr (std::is_same_v<T, LpWeightedNorm>) {
          Matrix Mw = s.R * M * inverse_of(s.R);
          if (s.p == 2.0) return sigma_max(Mw);
          if (exact) *exact = false;
          return sampled_induced_norm(LpNorm{s.p}, Mw, seed, sphere_samples);
        } else {
          if (exact) *exact = false;
          return sampled_induced_norm(spec, M, seed, sphere_samples);
        }
      },
      spec);
}

double lognorm_limit_oracle(const NormSpec& spec, const Matrix& A,
                            const std::vector<double>& schedule, std::uint64_t seed,
                            int sphere_samples) {
  check_square(spec, A);
  if (schedule.size() < 2) throw InputError("lognorm_limit_oracle: schedule needs >= 2 entries");
  const Index n = A.rows();
  const Matrix I = Matrix::Identity(n, n);
  // Subtracting the computed ||I|| (same sample set for the sampled kinds)
  // cancels the constant normalization bias in the quotient.
  double base = induced_norm(spec, I, nullptr, seed, sphere_samples);
  const double tol = 1e-7 * (1.0 + A.norm());
  double prev = std::numeric_limits<double>::quiet_NaN();
  double last = 0.0;
  for (double h : schedule) {
    double q = (induced_norm(spec, I + h * A, nullptr, seed, sphere_samples) - base) / h;
    if (std::isfinite(prev) && std::abs(q - prev) <= tol) return q;
    prev = q;
    last = q;
  }
  return last;  // noisy tail; callers compare at >= 1e-4 anyway
}

LumerEstimate lumer_sup_estimate(const PairingSpec& pairing, const Matrix& A, std::uint64_t seed,
                                 long count) {
  NormSpec norm = compatible_norm(pairing);
  check_square(norm, A);
  const Index n = A.rows();
  LumerEstimate est;
  est.value = -std::numeric_limits<double>::infinity();
  for (long i = 0; i < count; ++i) {
    VectorSampler sampler(derive_seed(seed, static_cast<std::uint64_t>(i)), n);
    Vector x = normalize_in(norm, sampler.next());
    double v = pairing_eval(pairing, A * x, x);
    if (v > est.value) {
      est.value = v;
      est.witness = x;
    }
  }
  return est;
}

Vector lumer_witness(const NormSpec& spec, const Matrix& A, double epsilon) {
  check_square(spec, A);
  const Index n = A.rows();
  if (std::holds_alternative<LinfNorm>(spec)) {
    Index istar = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) {
      double v = A(i, i) + A.row(i).cwiseAbs().sum() - std::abs(A(i, i));
      if (v > best) {
        best = v;
        istar = i;
      }
    }
    Vector x(n);
    for (Index j = 0; j < n; ++j) x[j] = sign_pm1(A(istar, j));
    x[istar] = 1.0;
    return x;
  }
  if (std::holds_alternative<L1Norm>(spec)) {
    if (!(epsilon > 0.0) || epsilon >= 1.0 / (2.0 * static_cast<double>(n)))
      throw InputError("lumer_witness: l1 requires 0 < epsilon < 1/(2n)");
    Index jstar = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (Index j = 0; j < n; ++j) {
      double v = A(j, j) + A.col(j).cwiseAbs().sum() - std::abs(A(j, j));
      if (v > best) {
        best = v;
        jstar = j;
      }
    }
    // Off-diagonal weight eps/(n-1): the cross-column terms contribute up to
    // n(n-1) max|a| per unit of perturbation, so this scaling is what makes
    // [[Ax,x]]_1 >= mu_1(A) - 2 n max|a| eps actually hold for n > 2.
    double w = n > 1 ? epsilon / static_cast<double>(n - 1) : 0.0;
    Vector x = Vector::Zero(n);
    x[jstar] = 1.0;
    for (Index i = 0; i < n; ++i)
      if (i != jstar) x[i] = w * sign_pm1(A(i, jstar));
    return x / x.lpNorm<1>();
  }
  throw InputError("lumer_witness: only linf and l1 kinds are supported");
}

LogNormResult lognorm(const NormSpec& spec, const Matrix& A) {
  check_square(spec, A);
  ensure_valid(spec);
  const Index n = A.rows();
  LogNormResult res;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, L1Norm>) {
          res.value = mu_one_formula(A);
          res.method = LogNormMethod::closed_form;
          Vector w = lumer_witness(spec, A, std::min(1e-8, 0.25 / static_cast<double>(n)));
          res.witness = w;
          res.witness_pairing = pairing_eval(SignPairing{}, A * w, w);
          res.diagnostics = "column formula";
        } else if constexpr (std::is_same_v<T, LinfNorm>) {
          res.value = mu_inf_formula(A);
          res.method = LogNormMethod::closed_form;
          Vector w = lumer_witness(spec, A);
          res.witness = w;
          res.witness_pairing = pairing_eval(MaxPairing{}, A * w, w);
          res.diagnostics = "row formula";
        } else if constexpr (std::is_same_v<T, LpNorm>) {
          if (s.p == 2.0) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (A + A.transpose()));
            res.value = es.eigenvalues().maxCoeff();
            res.method = LogNormMethod::closed_form;
            Vector w = es.eigenvectors().col(n - 1);
            res.witness = w;
            res.witness_pairing = w.dot(A * w);
            res.diagnostics = "symmetric eigensolve";
          } else {
            LumerEstimate est = lumer_sup_estimate(JmtUpperPairing{spec}, A, 0, 2048);
            res.value = est.value;
            res.method = LogNormMethod::lumer_sampled;
            res.witness = est.witness;
            res.witness_pairing = est.value;
            res.diagnostics = "sampled lower bound, 2048 samples; exact mu_p is out of reach for general p";
          }
        } else if constexpr (std::is_same_v<T, L2WeightedNorm>) {
          Matrix M = s.R * A * inverse_of(s.R);
          Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (M + M.transpose()));
          res.value = es.eigenvalues().maxCoeff();
          res.method = LogNormMethod::closed_form;
          Vector v = es.eigenvectors().col(n - 1);
          Vector w = inverse_of(s.R) * v;  // ||R w||_2 = 1
          res.witness = w;
          res.witness_pairing = (s.R * w).dot(s.R * (A * w));
          res.diagnostics = "symmetric eigensolve of R A R^-1";
        } else if constexpr (std::is_same_v<T, LpWeightedNorm>) {
          Matrix M = s.R * A * inverse_of(s.R);
          LogNormResult inner = lognorm(NormSpec{LpNorm{s.p}}, M);
          res.value = inner.value;
          res.method = inner.method;
          res.diagnostics = "mu_p(R A R^-1); " + inner.diagnostics;
        } else {
          LinearProgram lp = build_polyhedral_lognorm_lp(s.W, A);
          LpSolution sol = solve_lp(lp);
          if (sol.status != LpStatus::optimal)
            throw NumericError(std::string("lognorm(poly): LP came back ") +
                               to_string(sol.status) +
                               "; the program is feasible for every full-column-rank W");
          auto [H, gamma] = extract_H(lp, sol, s.W.rows());
          res.value = gamma;
          res.method = LogNormMethod::lp_program;
          std::ostringstream d;
          d << "LP with " << lp.num_vars() << " variables, " << sol.iterations << " pivots";
          res.diagnostics = d.str();
        }
      },
      spec);
  return res;
}

double mu_reference(const NormSpec& spec, const Matrix& A, bool* exact, std::uint64_t seed,
                    const std::vector<Vector>* extra_starts) {
  check_square(spec, A);
  if (exact) *exact = true;
  bool closed = std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LpNorm>) return s.p == 2.0;
        else if constexpr (std::is_same_v<T, LpWeightedNorm>) return s.p == 2.0;
        else return true;
      },
      spec);
  if (closed) return lognorm(spec, A).value;

  if (exact) *exact = false;
  // Sampled supremum of the upper-JMT quotient [[A x, x]]_+ over unit x; the
  // upper JMT pairing satisfies the Lumer equality, so this is a lower
  // bound converging from below. Extra starts let callers fold in the very
  // points they are testing against.
  const Index n = A.rows();
  JmtUpperPairing jmt{spec};
  double best = -std::numeric_limits<double>::infinity();
  Vector best_x = Vector::Unit(n, 0);
  auto consider = [&](const Vector& x0) {
    Vector x = normalize_in(spec, x0);
    double v = jmt_upper(spec, A * x, x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  };
  VectorSampler sampler(derive_seed(seed, 0x6d755265ULL), n);
  for (int s = 0; s < 2048; ++s) consider(sampler.next());
  if (extra_starts)
    for (const auto& x : *extra_starts) consider(x);
  Rng rng(derive_seed(seed, 0x6d755266ULL));
  double step = 0.5;
  for (int it = 0; it < 400; ++it) {
    Vector x = best_x + step * rng.normal_vector(n);
    if (norm_eval(spec, x) == 0.0) continue;
    Vector xn = normalize_in(spec, x);
    double v = jmt_upper(spec, A * xn, xn);
    if (v > best) {
      best = v;
      best_x = xn;
    } else {
      step *= 0.97;
    }
  }
  return best;
}

}  // namespace lognormlab
