#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "lognormlab/types.hpp"

namespace lognormlab {

// splitmix64; used both as a seed deriver and as the uniform bit source.
// Hand-rolled so that sampled sequences are identical across standard
// libraries and across thread counts (per-index derived seeds).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t s = base ^ (0x632be59bd9b4e019ULL * (stream + 1));
  splitmix64(s);
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // warm up so that small seeds do not produce correlated leading draws
    splitmix64(state_);
  }

  std::uint64_t bits() { return splitmix64(state_); }

  // uniform in (0,1)
  double uniform01() {
    return (static_cast<double>(bits() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t uniform_index(std::uint64_t n) { return bits() % n; }

  // standard normal via Box-Muller (cached spare)
  double normal() {
    if (spare_) {
      double v = *spare_;
      spare_.reset();
      return v;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    return r * std::cos(2.0 * M_PI * u2);
  }

  Vector normal_vector(Index n) {
    Vector x(n);
    for (Index i = 0; i < n; ++i) x[i] = normal();
    return x;
  }

  Matrix uniform_matrix(Index rows, Index cols, double lo, double hi) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

 private:
  std::uint64_t state_;
  std::optional<double> spare_;
};

// Vector source for the property harnesses: i.i.d. standard normal
// coordinates, with adversarial atoms (exact ties in |x_i|, zeroed
// coordinates, +-1 sign patterns, scaled basis vectors) mixed in at a
// fixed rate. Measure-zero sets carry the hard cases.
class VectorSampler {
 public:
  VectorSampler(std::uint64_t seed, Index dim, double scale = 1.0,
                double adversarial_rate = 0.1)
      : rng_(seed), dim_(dim), scale_(scale), rate_(adversarial_rate) {}

  Index dim() const { return dim_; }

  Vector next() {
    if (rng_.uniform01() < rate_) return adversarial();
    return scale_ * rng_.normal_vector(dim_);
  }

 private:
  Vector adversarial() {
    switch (rng_.uniform_index(4)) {
      case 0: {  // +-1 pattern
        Vector x(dim_);
        for (Index i = 0; i < dim_; ++i) x[i] = rng_.bits() & 1 ? 1.0 : -1.0;
        return scale_ * x;
      }
      case 1: {  // exact ties at the max-|.| coordinate
        Vector x = scale_ * rng_.normal_vector(dim_);
        Index imax;
        x.cwiseAbs().maxCoeff(&imax);
        Index k = 1 + static_cast<Index>(rng_.uniform_index(std::max<Index>(1, dim_ - 1)));
        for (Index j = 0; j < k; ++j) {
          Index i = static_cast<Index>(rng_.uniform_index(dim_));
          x[i] = (rng_.bits() & 1 ? 1.0 : -1.0) * std::abs(x[imax]);
        }
        return x;
      }
      case 2: {  // zeroed coordinates
        Vector x = scale_ * rng_.normal_vector(dim_);
        for (Index i = 0; i < dim_; ++i)
          if (rng_.uniform01() < 0.5) x[i] = 0.0;
        return x;
      }
      default: {  // scaled basis vector
        Vector x = Vector::Zero(dim_);
        x[rng_.uniform_index(dim_)] = scale_ * (rng_.bits() & 1 ? 1.0 : -1.0);
        return x;
      }
    }
  }

  Rng rng_;
  Index dim_;
  double scale_;
  double rate_;
};

}  // namespace lognormlab
