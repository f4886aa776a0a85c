#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lognormlab/norms.hpp"
#include "lognormlab/sampling.hpp"

using namespace lognormlab;

TEST_CASE("norm_eval on the reference points") {
  Vector x{{3.0, -4.0}};
  CHECK(norm_eval(L1Norm{}, x) == 7.0);
  CHECK(norm_eval(LinfNorm{}, x) == 4.0);
  CHECK(norm_eval(PolyhedralMaxNorm{Matrix::Identity(2, 2)}, x) == 4.0);

  // W = [[1,1],[1,-1]] encodes l1 in two dimensions: max(|3-4|, |3+4|) = 7
  Matrix W(2, 2);
  W << 1, 1, 1, -1;
  CHECK(norm_eval(PolyhedralMaxNorm{W}, x) == 7.0);
  CHECK(norm_eval(PolyhedralMaxNorm{W}, x) == norm_eval(L1Norm{}, x));

  CHECK(norm_eval(LpNorm{2.0}, x) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(norm_eval(L1Norm{}, Vector::Zero(3)) == 0.0);
  CHECK(norm_eval(LpNorm{3.0}, Vector::Zero(3)) == 0.0);
}

TEST_CASE("norm_eval rejects dimension mismatches and bad specs") {
  Vector x{{1.0, 2.0, 3.0}};
  CHECK_THROWS_AS(norm_eval(PolyhedralMaxNorm{Matrix::Identity(2, 2)}, x), InputError);
  CHECK_THROWS_AS(norm_eval(L2WeightedNorm{Matrix::Identity(2, 2)}, x), InputError);
  CHECK_THROWS_AS(norm_eval(LpNorm{1.0}, x), SpecError);
  CHECK_THROWS_AS(norm_eval(LpNorm{0.5}, x), SpecError);
}

TEST_CASE("validate_norm_spec invariants") {
  CHECK(validate_norm_spec(PolyhedralMaxNorm{Matrix::Identity(2, 2)}).ok);

  Matrix rank1(2, 2);
  rank1 << 1, 0, 2, 0;
  auto rep = validate_norm_spec(PolyhedralMaxNorm{rank1});
  CHECK_FALSE(rep.ok);
  CHECK(rep.message.find("rank") != std::string::npos);

  CHECK_FALSE(validate_norm_spec(LpNorm{1.0}).ok);
  CHECK_FALSE(validate_norm_spec(LpNorm{std::numeric_limits<double>::infinity()}).ok);
  CHECK(validate_norm_spec(LpNorm{1.0000001}).ok);

  Matrix wide(2, 3);
  wide.setOnes();
  CHECK_FALSE(validate_norm_spec(PolyhedralMaxNorm{wide}).ok);  // m < n

  Matrix near_singular(2, 2);
  near_singular << 1, 1, 1, 1 + 1e-12;
  CHECK_FALSE(validate_norm_spec(L2WeightedNorm{near_singular}).ok);
}

TEST_CASE("l1_as_polyhedral golden rows and the enumeration oracle") {
  CHECK(l1_as_polyhedral(1) == Matrix::Ones(1, 1));

  Matrix W2 = l1_as_polyhedral(2);
  Matrix want2(2, 2);
  want2 << 1, 1, 1, -1;
  CHECK(W2 == want2);

  Matrix W3 = l1_as_polyhedral(3);
  Matrix want3(4, 3);
  want3 << 1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1;
  CHECK(W3 == want3);

  CHECK_THROWS_AS(l1_as_polyhedral(13), ResourceError);
  CHECK_THROWS_AS(l1_as_polyhedral(0), InputError);

  // oracle: the max over all 2^n full sign patterns of s^T x equals ||x||_1,
  // and the half-pattern W reproduces it through |.|
  Rng rng(2024);
  for (Index n = 1; n <= 4; ++n) {
    Matrix W = l1_as_polyhedral(n);
    NormSpec poly = PolyhedralMaxNorm{W};
    for (int rep = 0; rep < 1000; ++rep) {
      Vector x = rng.normal_vector(n);
      double best = -1e300;
      for (Index mask = 0; mask < (Index{1} << n); ++mask) {
        double dot = 0;
        for (Index j = 0; j < n; ++j) dot += ((mask >> j) & 1 ? -1.0 : 1.0) * x[j];
        best = std::max(best, dot);
      }
      double l1 = x.cwiseAbs().sum();
      CHECK(best == doctest::Approx(l1).epsilon(1e-13));
      CHECK(std::abs(norm_eval(poly, x) - l1) <= 1e-12 * (1.0 + l1));
    }
  }
}

TEST_CASE("norm axioms hold on sampled vectors for every kind") {
  Rng rng(7);
  Matrix R = rng.uniform_matrix(3, 3, -1.0, 1.0) + 3.0 * Matrix::Identity(3, 3);
  Matrix W = rng.uniform_matrix(5, 3, -1.0, 1.0) + Matrix::Identity(5, 3);
  std::vector<NormSpec> specs = {L1Norm{},           LinfNorm{},
                                 LpNorm{2.5},        L2WeightedNorm{R},
                                 LpWeightedNorm{3.0, R}, PolyhedralMaxNorm{W}};
  for (const auto& spec : specs) {
    ensure_valid(spec);
    VectorSampler sampler(42, 3, 2.0);
    Rng coeff(43);
    for (int i = 0; i < 2000; ++i) {
      Vector x = sampler.next(), y = sampler.next();
      double a = coeff.uniform(-4.0, 4.0);
      double nx = norm_eval(spec, x), ny = norm_eval(spec, y);
      if (!x.isZero(0.0)) CHECK(nx > 0.0);
      CHECK(std::abs(norm_eval(spec, a * x) - std::abs(a) * nx) <=
            1e-12 * (1.0 + std::abs(a) * nx));
      CHECK(norm_eval(spec, x + y) <= nx + ny + 1e-12 * (1.0 + nx + ny));
    }
    CHECK(norm_eval(spec, Vector::Zero(3)) == 0.0);
  }
}

TEST_CASE("weighted norms factor through R exactly as computed") {
  Rng rng(11);
  Matrix R = rng.uniform_matrix(4, 4, -1.0, 1.0) + 2.0 * Matrix::Identity(4, 4);
  NormSpec weighted = LpWeightedNorm{2.7, R};
  NormSpec plain = LpNorm{2.7};
  VectorSampler sampler(12, 4);
  for (int i = 0; i < 500; ++i) {
    Vector x = sampler.next();
    CHECK(norm_eval(weighted, x) == norm_eval(plain, R * x));
  }
}

TEST_CASE("lp_norm max-factoring survives extreme scales") {
  Vector big{{1e300, -1e300}};
  CHECK(std::isfinite(lp_norm(big, 200.0)));
  CHECK(lp_norm(big, 200.0) == doctest::Approx(1e300 * std::pow(2.0, 1.0 / 200.0)));
  Vector tiny{{1e-300, 1e-300}};
  CHECK(lp_norm(tiny, 3.0) > 0.0);
}

TEST_CASE("norm_spec_equal distinguishes kinds and parameters") {
  CHECK(norm_spec_equal(L1Norm{}, L1Norm{}));
  CHECK_FALSE(norm_spec_equal(L1Norm{}, LinfNorm{}));
  CHECK(norm_spec_equal(LpNorm{3.0}, LpNorm{3.0}));
  CHECK_FALSE(norm_spec_equal(LpNorm{3.0}, LpNorm{2.0}));
  Matrix W(2, 2), V(2, 2);
  W << 1, 1, 1, -1;
  V << 1, 1, 1, 1 - 2e-16;
  CHECK(norm_spec_equal(PolyhedralMaxNorm{W}, PolyhedralMaxNorm{W}));
  CHECK_FALSE(norm_spec_equal(PolyhedralMaxNorm{W}, PolyhedralMaxNorm{V}));
}
