#include "lognormlab/pairings.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace lognormlab {

namespace {

void check_pair_dims(const Vector& x, const Vector& y) {
  if (x.size() != y.size())
    throw InputError("pairing: x has length " + std::to_string(x.size()) +
                     ", y has length " + std::to_string(y.size()));
}

Matrix spd_sqrt(const Matrix& P) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(P);
  if (es.info() != Eigen::Success) throw SpecError("l2w pairing: eigensolve of P failed");
  Vector lam = es.eigenvalues();
  if (lam.minCoeff() <= 0.0)
    throw SpecError("l2w pairing: P is not positive definite");
  return es.eigenvectors() * lam.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

double max_pairing(const Vector& x, const Vector& y) {
  if (y.size() == 0) return 0.0;
  double ymax = y.cwiseAbs().maxCoeff();
  if (ymax == 0.0) return 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < y.size(); ++i)
    if (std::abs(y[i]) == ymax) best = std::max(best, y[i] * x[i]);
  return best;
}

double lp_pairing(const Vector& x, const Vector& y, double p) {
  double ny = lp_norm(y, p);
  if (ny == 0.0) return 0.0;
  double acc = 0.0;
  for (Index i = 0; i < y.size(); ++i)
    if (y[i] != 0.0) acc += sign_strict(y[i]) * std::pow(std::abs(y[i]), p - 1.0) * x[i];
  return std::pow(ny, 2.0 - p) * acc;
}

double abs_sum_pairing(const Vector& x, const Vector& y) {
  return x.cwiseProduct(y).cwiseAbs().sum();
}

}  // namespace

ValidationReport validate_pairing_spec(const PairingSpec& spec) {
  ValidationReport rep;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LpPairing>) {
          if (!(s.p > 1.0) || !std::isfinite(s.p)) {
            rep.ok = false;
            rep.message = "lp pairing: p must satisfy 1 < p < inf";
          }
        } else if constexpr (std::is_same_v<T, L2WeightedPairing>) {
          if (s.P.rows() != s.P.cols() || s.P.rows() == 0) {
            rep.ok = false;
            rep.message = "l2w pairing: P must be square and nonempty";
          } else if (!s.P.isApprox(s.P.transpose(), 1e-12)) {
            rep.ok = false;
            rep.message = "l2w pairing: P must be symmetric";
          } else {
            Eigen::LLT<Matrix> llt(s.P);
            if (llt.info() != Eigen::Success) {
              rep.ok = false;
              rep.message = "l2w pairing: Cholesky of P failed (not positive definite)";
            }
          }
        } else if constexpr (std::is_same_v<T, LpWeightedPairing>) {
          rep = validate_norm_spec(LpWeightedNorm{s.p, s.R});
        } else if constexpr (std::is_same_v<T, PolyhedralMaxPairing>) {
          rep = validate_norm_spec(PolyhedralMaxNorm{s.W});
        } else if constexpr (std::is_same_v<T, ConvexComboPairing>) {
          if (!(s.alpha >= 0.0 && s.alpha <= 1.0)) {
            rep.ok = false;
            rep.message = "combo pairing: alpha must lie in [0,1]";
          }
        } else if constexpr (std::is_same_v<T, JmtUpperPairing>) {
          rep = validate_norm_spec(s.norm);
        } else if constexpr (std::is_same_v<T, JmtLowerPairing>) {
          rep = validate_norm_spec(s.norm);
        }
      },
      spec);
  return rep;
}

void ensure_valid(const PairingSpec& spec) {
  auto rep = validate_pairing_spec(spec);
  if (!rep.ok) throw SpecError("invalid pairing spec: " + rep.message);
}

std::optional<Index> pairing_dim(const PairingSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::optional<Index> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, L2WeightedPairing>) return s.P.cols();
        else if constexpr (std::is_same_v<T, LpWeightedPairing>) return s.R.cols();
        else if constexpr (std::is_same_v<T, PolyhedralMaxPairing>) return s.W.cols();
        else if constexpr (std::is_same_v<T, JmtUpperPairing>) return norm_dim(s.norm);
        else if constexpr (std::is_same_v<T, JmtLowerPairing>) return norm_dim(s.norm);
        else return std::nullopt;
      },
      spec);
}

std::string pairing_kind_name(const PairingSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SignPairing>) return "sign";
        else if constexpr (std::is_same_v<T, MaxPairing>) return "max";
        else if constexpr (std::is_same_v<T, LpPairing>) return "lp";
        else if constexpr (std::is_same_v<T, L2WeightedPairing>) return "l2w";
        else if constexpr (std::is_same_v<T, LpWeightedPairing>) return "lpw";
        else if constexpr (std::is_same_v<T, PolyhedralMaxPairing>) return "poly";
        else if constexpr (std::is_same_v<T, MinIndexLgPairing>) return "minidx";
        else if constexpr (std::is_same_v<T, AbsSumPairing>) return "abssum";
        else if constexpr (std::is_same_v<T, ConvexComboPairing>) return "combo";
        else if constexpr (std::is_same_v<T, JmtUpperPairing>) return "jmt+";
        else return "jmt-";
      },
      spec);
}

NormSpec compatible_norm(const PairingSpec& spec) {
  return std::visit(
      [](const auto& s) -> NormSpec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SignPairing>) return L1Norm{};
        else if constexpr (std::is_same_v<T, MaxPairing>) return LinfNorm{};
        else if constexpr (std::is_same_v<T, LpPairing>) return LpNorm{s.p};
        else if constexpr (std::is_same_v<T, L2WeightedPairing>) return L2WeightedNorm{spd_sqrt(s.P)};
        else if constexpr (std::is_same_v<T, LpWeightedPairing>) return LpWeightedNorm{s.p, s.R};
        else if constexpr (std::is_same_v<T, PolyhedralMaxPairing>) return PolyhedralMaxNorm{s.W};
        else if constexpr (std::is_same_v<T, MinIndexLgPairing>) return LinfNorm{};
        else if constexpr (std::is_same_v<T, AbsSumPairing>) return LpNorm{2.0};
        else if constexpr (std::is_same_v<T, ConvexComboPairing>) return LpNorm{2.0};
        else if constexpr (std::is_same_v<T, JmtUpperPairing>) return s.norm;
        else return s.norm;
      },
      spec);
}

PairingSpec natural_pairing(const NormSpec& spec) {
  return std::visit(
      [](const auto& s) -> PairingSpec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, L1Norm>) return SignPairing{};
        else if constexpr (std::is_same_v<T, LinfNorm>) return MaxPairing{};
        else if constexpr (std::is_same_v<T, LpNorm>) return LpPairing{s.p};
        else if constexpr (std::is_same_v<T, L2WeightedNorm>)
          return L2WeightedPairing{s.R.transpose() * s.R};
        else if constexpr (std::is_same_v<T, LpWeightedNorm>)
          return LpWeightedPairing{s.p, s.R};
        else return PolyhedralMaxPairing{s.W};
      },
      spec);
}

std::vector<double> power_schedule(int k_lo, int k_hi) {
  if (k_lo >= k_hi) throw InputError("power_schedule: need k_lo < k_hi");
  std::vector<double> h;
  h.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
  for (int k = k_lo; k <= k_hi; ++k) h.push_back(std::ldexp(1.0, -k));
  return h;
}

const std::vector<double>& default_jmt_schedule() {
  static const std::vector<double> schedule = power_schedule(8, 40);
  return schedule;
}

double jmt_upper(const NormSpec& norm, const Vector& x, const Vector& y,
                 const std::vector<double>& schedule) {
  check_pair_dims(x, y);
  if (schedule.size() < 2) throw InputError("jmt_upper: schedule needs >= 2 entries");
  double nx = norm_eval(norm, x);
  double ny = norm_eval(norm, y);
  if (nx == 0.0 || ny == 0.0) return 0.0;

  // Work on unit-normalized arguments: the one-sided quotient
  // q(h) = (||yhat + h xhat|| - ||yhat||)/h is nonincreasing as h -> 0+ by
  // convexity and [[x,y]]_+ = ||x|| ||y|| lim q. Normalization keeps the
  // cancellation in the numerator at the eps/h scale regardless of the
  // magnitudes of x and y.
  Vector xhat = x / nx;
  Vector yhat = y / ny;
  double nyhat = norm_eval(norm, yhat);

  const double tol = 1e-7 * (1.0 + 1.0 / (nx * ny));
  double prev = std::numeric_limits<double>::quiet_NaN();
  double prev2 = prev;
  for (double h : schedule) {
    double q = (norm_eval(norm, yhat + h * xhat) - nyhat) / h;
    if (std::isfinite(prev) && std::abs(q - prev) <= tol) return nx * ny * q;
    prev2 = prev;
    prev = q;
  }
  std::ostringstream msg;
  msg << "jmt_upper: tail did not settle; last estimates " << nx * ny * prev2
      << " (h=" << schedule[schedule.size() - 2] << ") vs " << nx * ny * prev
      << " (h=" << schedule.back() << ")";
  throw NumericError(msg.str());
}

double jmt_lower(const NormSpec& norm, const Vector& x, const Vector& y,
                 const std::vector<double>& schedule) {
  return -jmt_upper(norm, -x, y, schedule);
}

double ell1_jmt_closed(const Vector& x, const Vector& y) {
  check_pair_dims(x, y);
  double acc = 0.0;
  for (Index i = 0; i < x.size(); ++i)
    acc += y[i] == 0.0 ? std::abs(x[i]) : sign_strict(y[i]) * x[i];
  return y.lpNorm<1>() * acc;
}

std::vector<Index> active_index_set(const Vector& y, double tol) {
  if (tol < 0.0) throw InputError("active_index_set: tol must be >= 0");
  std::vector<Index> idx;
  if (y.size() == 0) return idx;
  double ymax = y.cwiseAbs().maxCoeff();
  for (Index i = 0; i < y.size(); ++i)
    if (std::abs(y[i]) >= ymax - tol) idx.push_back(i);
  return idx;
}

double min_index_lg_eval(const Vector& x, const Vector& y) {
  check_pair_dims(x, y);
  if (y.size() == 0) return 0.0;
  double ymax = y.cwiseAbs().maxCoeff();
  for (Index i = 0; i < y.size(); ++i)
    if (std::abs(y[i]) == ymax) return x[i] * y[i];
  return 0.0;  // unreachable
}

double pairing_eval(const PairingSpec& spec, const Vector& x, const Vector& y) {
  check_pair_dims(x, y);
  if (auto n = pairing_dim(spec); n && *n != x.size())
    throw InputError("pairing_eval: vectors have length " + std::to_string(x.size()) +
                     ", spec expects " + std::to_string(*n));
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SignPairing>) {
          double acc = 0.0;
          for (Index i = 0; i < x.size(); ++i) acc += sign_strict(y[i]) * x[i];
          return y.lpNorm<1>() * acc;
        } else if constexpr (std::is_same_v<T, MaxPairing>) {
          return max_pairing(x, y);
        } else if constexpr (std::is_same_v<T, LpPairing>) {
          return lp_pairing(x, y, s.p);
        } else if constexpr (std::is_same_v<T, L2WeightedPairing>) {
          return x.dot(s.P * y);
        } else if constexpr (std::is_same_v<T, LpWeightedPairing>) {
          return lp_pairing(s.R * x, s.R * y, s.p);
        } else if constexpr (std::is_same_v<T, PolyhedralMaxPairing>) {
          return max_pairing(s.W * x, s.W * y);
        } else if constexpr (std::is_same_v<T, MinIndexLgPairing>) {
          return min_index_lg_eval(x, y);
        } else if constexpr (std::is_same_v<T, AbsSumPairing>) {
          return abs_sum_pairing(x, y);
        } else if constexpr (std::is_same_v<T, ConvexComboPairing>) {
          return s.alpha * x.dot(y) + (1.0 - s.alpha) * abs_sum_pairing(x, y);
        } else if constexpr (std::is_same_v<T, JmtUpperPairing>) {
          return jmt_upper(s.norm, x, y);
        } else {
          return jmt_lower(s.norm, x, y);
        }
      },
      spec);
}

}  // namespace lognormlab
