#include "lognormlab/norms.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace lognormlab {

namespace {

bool well_conditioned(const Matrix& M) {
  Eigen::JacobiSVD<Matrix> svd(M);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return false;
  return sv(sv.size() - 1) > kRankTolerance * sv(0);
}

void check_dim(const NormSpec& spec, const Vector& x) {
  if (auto n = norm_dim(spec); n && *n != x.size())
    throw InputError("norm_eval: vector has length " + std::to_string(x.size()) +
                     ", spec expects " + std::to_string(*n));
}

}  // namespace

ValidationReport validate_norm_spec(const NormSpec& spec) {
  ValidationReport rep;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LpNorm>) {
          if (!(s.p > 1.0) || !std::isfinite(s.p)) {
            rep.ok = false;
            rep.message = "lp: p must satisfy 1 < p < inf (got " + std::to_string(s.p) + ")";
          }
        } else if constexpr (std::is_same_v<T, L2WeightedNorm>) {
          if (s.R.rows() != s.R.cols() || s.R.rows() == 0) {
            rep.ok = false;
            rep.message = "l2w: R must be square and nonempty";
          } else if (!well_conditioned(s.R)) {
            rep.ok = false;
            rep.message = "l2w: R fails the invertibility test (sigma_min <= 1e-9 sigma_max)";
          }
        } else if constexpr (std::is_same_v<T, LpWeightedNorm>) {
          if (!(s.p > 1.0) || !std::isfinite(s.p)) {
            rep.ok = false;
            rep.message = "lpw: p must satisfy 1 < p < inf";
          } else if (s.R.rows() != s.R.cols() || s.R.rows() == 0) {
            rep.ok = false;
            rep.message = "lpw: R must be square and nonempty";
          } else if (!well_conditioned(s.R)) {
            rep.ok = false;
            rep.message = "lpw: R fails the invertibility test (sigma_min <= 1e-9 sigma_max)";
          }
        } else if constexpr (std::is_same_v<T, PolyhedralMaxNorm>) {
          if (s.W.rows() < s.W.cols() || s.W.cols() == 0) {
            rep.ok = false;
            rep.message = "poly: W must be m x n with m >= n >= 1";
          } else if (!well_conditioned(s.W)) {
            rep.ok = false;
            rep.message = "poly: W is not full column rank (sigma_min <= 1e-9 sigma_max)";
          }
        }
      },
      spec);
  return rep;
}

void ensure_valid(const NormSpec& spec) {
  auto rep = validate_norm_spec(spec);
  if (!rep.ok) throw SpecError("invalid norm spec: " + rep.message);
}

std::optional<Index> norm_dim(const NormSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::optional<Index> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, L2WeightedNorm>) return s.R.cols();
        else if constexpr (std::is_same_v<T, LpWeightedNorm>) return s.R.cols();
        else if constexpr (std::is_same_v<T, PolyhedralMaxNorm>) return s.W.cols();
        else return std::nullopt;
      },
      spec);
}

double lp_norm(const Vector& x, double p) {
  if (x.size() == 0) return 0.0;
  double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  // ||x||_p = m (sum |x_i/m|^p)^(1/p); factoring out the max keeps the
  // powers in [0,1] for any p.
  double acc = 0.0;
  for (Index i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x[i]) / m, p);
  return m * std::pow(acc, 1.0 / p);
}

double norm_eval(const NormSpec& spec, const Vector& x) {
  check_dim(spec, x);
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, L1Norm>) {
          return x.lpNorm<1>();
        } else if constexpr (std::is_same_v<T, LinfNorm>) {
          return x.size() ? x.lpNorm<Eigen::Infinity>() : 0.0;
        } else if constexpr (std::is_same_v<T, LpNorm>) {
          if (!(s.p > 1.0) || !std::isfinite(s.p))
            throw SpecError("norm_eval: lp spec with p out of (1,inf)");
          return lp_norm(x, s.p);
        } else if constexpr (std::is_same_v<T, L2WeightedNorm>) {
          return (s.R * x).norm();
        } else if constexpr (std::is_same_v<T, LpWeightedNorm>) {
          if (!(s.p > 1.0) || !std::isfinite(s.p))
            throw SpecError("norm_eval: lpw spec with p out of (1,inf)");
          return lp_norm(s.R * x, s.p);
        } else {
          return (s.W * x).cwiseAbs().maxCoeff();
        }
      },
      spec);
}

Matrix l1_as_polyhedral(Index n) {
  if (n < 1) throw InputError("l1_as_polyhedral: n must be >= 1");
  if (n > 12) throw ResourceError("l1_as_polyhedral: n > 12 would need 2^" +
                                  std::to_string(n - 1) + " rows");
  const Index rows = Index{1} << (n - 1);
  Matrix W(rows, n);
  for (Index r = 0; r < rows; ++r) {
    W(r, 0) = 1.0;
    for (Index j = 1; j < n; ++j) {
      // bit 0 -> +1, bit 1 -> -1, counting from the second coordinate,
      // so rows come out in lexicographic order with +1 first.
      bool neg = (r >> (n - 1 - j)) & 1;
      W(r, j) = neg ? -1.0 : 1.0;
    }
  }
  return W;
}

bool norm_spec_equal(const NormSpec& a, const NormSpec& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& sa) -> bool {
        using T = std::decay_t<decltype(sa)>;
        const auto& sb = std::get<T>(b);
        if constexpr (std::is_same_v<T, LpNorm>) {
          return sa.p == sb.p;
        } else if constexpr (std::is_same_v<T, L2WeightedNorm>) {
          return sa.R.rows() == sb.R.rows() && sa.R.cols() == sb.R.cols() && sa.R == sb.R;
        } else if constexpr (std::is_same_v<T, LpWeightedNorm>) {
          return sa.p == sb.p && sa.R.rows() == sb.R.rows() && sa.R.cols() == sb.R.cols() &&
                 sa.R == sb.R;
        } else if constexpr (std::is_same_v<T, PolyhedralMaxNorm>) {
          return sa.W.rows() == sb.W.rows() && sa.W.cols() == sb.W.cols() && sa.W == sb.W;
        } else {
          return true;
        }
      },
      a);
}

std::string norm_kind_name(const NormSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, L1Norm>) return "l1";
        else if constexpr (std::is_same_v<T, LinfNorm>) return "linf";
        else if constexpr (std::is_same_v<T, LpNorm>) return "lp";
        else if constexpr (std::is_same_v<T, L2WeightedNorm>) return "l2w";
        else if constexpr (std::is_same_v<T, LpWeightedNorm>) return "lpw";
        else return "poly";
      },
      spec);
}

}  // namespace lognormlab
