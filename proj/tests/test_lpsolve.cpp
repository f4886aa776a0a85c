#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lognormlab/lognorm.hpp"
#include "lognormlab/lpsolve.hpp"
#include "lognormlab/sampling.hpp"

using namespace lognormlab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LinearProgram empty_lp(Index n) {
  LinearProgram lp;
  lp.c = Vector::Zero(n);
  lp.A_eq = Matrix(0, n);
  lp.b_eq = Vector(0);
  lp.A_ub = Matrix(0, n);
  lp.b_ub = Vector(0);
  lp.lo = Vector::Constant(n, -kInf);
  lp.hi = Vector::Constant(n, kInf);
  return lp;
}

}  // namespace

TEST_CASE("minimize x subject to x >= 3") {
  // via a bound
  LinearProgram lp = empty_lp(1);
  lp.c[0] = 1.0;
  lp.lo[0] = 3.0;
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.z[0] == doctest::Approx(3.0).epsilon(1e-12));

  // via an inequality row on a free variable
  LinearProgram lp2 = empty_lp(1);
  lp2.c[0] = 1.0;
  lp2.A_ub = Matrix(1, 1);
  lp2.A_ub << -1.0;
  lp2.b_ub = Vector{{-3.0}};
  LpSolution sol2 = solve_lp(lp2);
  REQUIRE(sol2.status == LpStatus::optimal);
  CHECK(sol2.z[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(sol2.objective_value == doctest::Approx(3.0));
}

TEST_CASE("infeasible and unbounded detection") {
  LinearProgram lp = empty_lp(1);
  lp.A_eq = Matrix(2, 1);
  lp.A_eq << 1.0, 1.0;
  lp.b_eq = Vector{{1.0, 2.0}};
  CHECK(solve_lp(lp).status == LpStatus::infeasible);

  LinearProgram lp2 = empty_lp(1);
  lp2.c[0] = -1.0;
  lp2.lo[0] = 0.0;
  CHECK(solve_lp(lp2).status == LpStatus::unbounded);

  LinearProgram lp3 = empty_lp(2);  // fully free unbounded direction
  lp3.c << 1.0, -1.0;
  CHECK(solve_lp(lp3).status == LpStatus::unbounded);
}

TEST_CASE("two-sided bounds and a degenerate vertex") {
  LinearProgram lp = empty_lp(2);
  lp.c << -1.0, -2.0;
  lp.lo << 0.0, 0.0;
  lp.hi << 4.0, kInf;
  lp.A_ub = Matrix(3, 2);
  lp.A_ub << 1.0, 1.0, 1.0, 0.0, 0.0, 1.0;  // x+y <= 6 (and two redundant rows)
  lp.b_ub = Vector{{6.0, 4.0, 6.0}};
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.z[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(sol.z[1] == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(sol.objective_value == doctest::Approx(-12.0).epsilon(1e-9));
}

TEST_CASE("builder shape: W = I2 gives 7 variables, 4 equalities, 6 inequalities") {
  Matrix A(2, 2);
  A << -2, 1, 0, -3;
  LinearProgram lp = build_polyhedral_lognorm_lp(Matrix::Identity(2, 2), A);
  CHECK(lp.num_vars() == 7);  // 4 H + 2 T + 1 gamma = 2m^2 - m + 1
  CHECK(lp.A_eq.rows() == 4);
  CHECK(lp.A_ub.rows() == 6);  // 2(m^2 - m) + m
  // H and gamma free, T bounded below by zero
  for (Index k = 0; k < 4; ++k) CHECK(lp.lo[k] == -kInf);
  CHECK(lp.lo[4] == 0.0);
  CHECK(lp.lo[5] == 0.0);
  CHECK(lp.lo[6] == -kInf);
}

TEST_CASE("W = I forces H = A and gamma* = mu_inf(A)") {
  Matrix A(2, 2);
  A << -2, 1, 0, -3;
  LinearProgram lp = build_polyhedral_lognorm_lp(Matrix::Identity(2, 2), A);
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  auto [H, gamma] = extract_H(lp, sol, 2);
  CHECK(gamma == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK((H - A).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("A = 0 solves to gamma* = 0 with H = 0") {
  Matrix W = l1_as_polyhedral(3);
  LinearProgram lp = build_polyhedral_lognorm_lp(W, Matrix::Zero(3, 3));
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  auto [H, gamma] = extract_H(lp, sol, W.rows());
  CHECK(std::abs(gamma) <= 1e-9);
  CHECK(mu_inf_formula(H) <= gamma + 1e-7);
}

TEST_CASE("l1 patterns: gamma* recovers mu_1(A)") {
  Matrix A(2, 2);
  A << -2, 1, 0, -3;
  Matrix W = l1_as_polyhedral(2);
  LinearProgram lp = build_polyhedral_lognorm_lp(W, A);
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  auto [H, gamma] = extract_H(lp, sol, 2);
  CHECK(gamma == doctest::Approx(-2.0).epsilon(1e-9));  // = mu_1(A)
  CHECK(mu_inf_formula(H) == doctest::Approx(gamma).epsilon(1e-7));
}

TEST_CASE("optimal gamma matches the lognorm dispatch and mu_inf(H) = gamma") {
  for (int i = 0; i < 25; ++i) {
    Index n = 2 + (i % 3);
    Rng rng(derive_seed(300, static_cast<std::uint64_t>(i)));
    Matrix A = rng.uniform_matrix(n, n, -2.0, 2.0);
    Matrix W = rng.uniform_matrix(n + 1, n, -1.0, 1.0) + Matrix::Identity(n + 1, n);
    if (!validate_norm_spec(PolyhedralMaxNorm{W}).ok) continue;
    LinearProgram lp = build_polyhedral_lognorm_lp(W, A);
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);  // feasibility is guaranteed
    auto [H, gamma] = extract_H(lp, sol, W.rows());
    CHECK(std::abs(mu_inf_formula(H) - gamma) <= 1e-7);
    CHECK(gamma == lognorm(PolyhedralMaxNorm{W}, A).value);
  }
}

TEST_CASE("feasible points stay above the sampled limit oracle (lower bound)") {
  for (int i = 0; i < 8; ++i) {
    Index n = 2 + (i % 2);
    Rng rng(derive_seed(900, static_cast<std::uint64_t>(i)));
    Matrix A = rng.uniform_matrix(n, n, -2.0, 2.0);
    Matrix W = l1_as_polyhedral(n);  // m <= 4 for n <= 3
    NormSpec norm = PolyhedralMaxNorm{W};
    LinearProgram lp = build_polyhedral_lognorm_lp(W, A);
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    auto [H, gamma] = extract_H(lp, sol, W.rows());
    double oracle = lognorm_limit_oracle(norm, A);
    CHECK(gamma >= oracle - 1e-7);
    // inflating gamma or T keeps feasibility and stays above the bound
    CHECK(gamma + 0.5 >= oracle - 1e-7);
  }
}

TEST_CASE("iteration cap raises a resource error") {
  Matrix A(4, 4);
  Rng rng(1234);
  A = rng.uniform_matrix(4, 4, -2.0, 2.0);
  LinearProgram lp = build_polyhedral_lognorm_lp(l1_as_polyhedral(4), A);
  CHECK_THROWS_AS(solve_lp(lp, 3), ResourceError);
}

TEST_CASE("builder rejects bad shapes") {
  Matrix A(2, 2);
  A.setZero();
  Matrix rank1(2, 2);
  rank1 << 1, 0, 2, 0;
  CHECK_THROWS_AS(build_polyhedral_lognorm_lp(rank1, A), SpecError);
  CHECK_THROWS_AS(build_polyhedral_lognorm_lp(Matrix::Identity(3, 3), A), InputError);
  LinearProgram lp = build_polyhedral_lognorm_lp(Matrix::Identity(2, 2), A);
  LpSolution sol = solve_lp(lp);
  LpSolution not_opt;
  not_opt.status = LpStatus::infeasible;
  CHECK_THROWS_AS(extract_H(lp, not_opt, 2), InputError);
}
