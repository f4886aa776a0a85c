#include "lognormlab/selftest.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "lognormlab/contraction.hpp"
#include "lognormlab/lpsolve.hpp"
#include "lognormlab/parallel.hpp"
#include "lognormlab/regularity.hpp"
#include "lognormlab/sampling.hpp"

namespace lognormlab {

namespace {

struct Criterion {
  int index;
  std::string title;
  double time_limit_s;  // 0 = no limit
  bool (*body)(std::uint64_t, std::ostringstream&);
};

Matrix random_matrix(std::uint64_t seed, Index n) {
  Rng r(seed);
  return r.uniform_matrix(n, n, -2.0, 2.0);
}

// 1. closed form vs limit oracle for l1 / linf / l2 on 200 seeded A
bool c1(std::uint64_t seed, std::ostringstream& out) {
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    Index n = 2 + (i % 5);
    Matrix A = random_matrix(derive_seed(seed, static_cast<std::uint64_t>(i)), n);
    const NormSpec specs[] = {L1Norm{}, LinfNorm{},
                              L2WeightedNorm{Matrix::Identity(n, n)}};
    for (const auto& spec : specs) {
      double closed = lognorm(spec, A).value;
      double oracle = lognorm_limit_oracle(spec, A);
      worst = std::max(worst, std::abs(closed - oracle));
    }
  }
  out << "worst |mu_closed - mu_oracle| = " << worst;
  return worst < 1e-4;
}

// 2. polyhedral LP vs closed-form mu_inf (W = I) and mu_1 (W = l1 patterns)
bool c2(std::uint64_t seed, std::ostringstream& out) {
  double worst_a = 0.0;
  for (int i = 0; i < 100; ++i) {
    Index n = 2 + (i % 5);
    Matrix A = random_matrix(derive_seed(seed, 0x200 + static_cast<std::uint64_t>(i)), n);
    Matrix W = Matrix::Identity(n, n);
    LinearProgram lp = build_polyhedral_lognorm_lp(W, A);
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) {
      out << "identity case " << i << ": LP status " << to_string(sol.status);
      return false;
    }
    auto [H, gamma] = extract_H(lp, sol, n);
    worst_a = std::max(worst_a, std::abs(gamma - mu_inf_formula(A)));
  }
  double worst_b = 0.0;
  for (Index n = 2; n <= 4; ++n) {
    Matrix W = l1_as_polyhedral(n);
    for (int i = 0; i < 100; ++i) {
      Matrix A = random_matrix(
          derive_seed(seed, 0x300 + static_cast<std::uint64_t>(100 * n + i)), n);
      LinearProgram lp = build_polyhedral_lognorm_lp(W, A);
      LpSolution sol = solve_lp(lp);
      if (sol.status != LpStatus::optimal) {
        out << "l1 case n=" << n << " i=" << i << ": LP status " << to_string(sol.status);
        return false;
      }
      auto [H, gamma] = extract_H(lp, sol, W.rows());
      worst_b = std::max(worst_b, std::abs(gamma - mu_one_formula(A)));
    }
  }
  out << "worst |gamma - mu_inf| = " << worst_a << ", worst |gamma - mu_1| = " << worst_b;
  return worst_a < 1e-7 && worst_b < 1e-7;
}

// 3. max pairing equals the numeric linf upper JMT pairing, ties included
bool c3(std::uint64_t seed, std::ostringstream& out) {
  const long count = 10000;
  std::vector<double> diffs(count);
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
    Index n = 2 + static_cast<Index>(i % 7);  // up to 8
    VectorSampler s(derive_seed(seed, 0x400 + i), n, 1.5, 0.3);
    Vector x = s.next(), y = s.next();
    diffs[i] = std::abs(pairing_eval(MaxPairing{}, x, y) - jmt_upper(LinfNorm{}, x, y));
  });
  double worst = *std::max_element(diffs.begin(), diffs.end());
  out << "worst |max pairing - jmt+| = " << worst;
  return worst < 1e-6;
}

// 4. l1 closed-form upper JMT (zero coordinates exercised) vs numeric
bool c4(std::uint64_t seed, std::ostringstream& out) {
  const long count = 10000;
  std::vector<double> diffs(count);
  long zero_cases = 0;
  std::vector<char> has_zero(count, 0);
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
    Index n = 2 + static_cast<Index>(i % 5);
    VectorSampler s(derive_seed(seed, 0x500 + i), n, 1.5, 0.35);
    Vector x = s.next(), y = s.next();
    has_zero[i] = (y.array() == 0.0).any() ? 1 : 0;
    diffs[i] = std::abs(ell1_jmt_closed(x, y) - jmt_upper(L1Norm{}, x, y));
  });
  for (char z : has_zero) zero_cases += z;
  double worst = *std::max_element(diffs.begin(), diffs.end());
  out << "worst |closed - numeric| = " << worst << " (" << zero_cases
      << " samples with zero coordinates)";
  return worst < 1e-6 && zero_cases > 100;
}

std::vector<std::pair<std::string, PairingSpec>> positive_suite(std::uint64_t seed) {
  const Index n = 4;
  Rng r(derive_seed(seed, 0x600));
  Matrix Q = r.uniform_matrix(n, n, -1.0, 1.0);
  Matrix P = Q.transpose() * Q + 0.5 * Matrix::Identity(n, n);
  Matrix W(6, n);
  for (std::uint64_t attempt = 0;; ++attempt) {
    W = Rng(derive_seed(seed, 0x601 + attempt)).uniform_matrix(6, n, -1.0, 1.0);
    if (validate_norm_spec(PolyhedralMaxNorm{W}).ok) break;
  }
  return {{"sign", SignPairing{}},
          {"max", MaxPairing{}},
          {"l2w", L2WeightedPairing{P}},
          {"lp3", LpPairing{3.0}},
          {"poly", PolyhedralMaxPairing{W}},
          {"minidx", MinIndexLgPairing{}}};
}

// 5. all seven conditions pass for the regular pairings
bool c5(std::uint64_t seed, std::ostringstream& out) {
  bool ok = true;
  for (const auto& [name, pairing] : positive_suite(seed)) {
    RegularityOptions opts;
    opts.count = 10000;
    opts.dim = 4;
    opts.seed = derive_seed(seed, 0x700);
    RegularityReport rep = check_regularity(pairing, opts);
    if (!rep.all_pass()) {
      ok = false;
      out << name << " failed: ";
      if (!rep.wp_axioms.pass) out << "wp_axioms ";
      for (const auto* c : rep.seven())
        if (!c->pass) out << c->name << " (violation " << c->worst_violation << ") ";
      out << "; ";
    }
  }
  if (ok) out << "sign, max, l2w, lp(3), poly, minidx all pass the seven checks";
  return ok;
}

// 6. negative controls fail straight angle with counterexamples, plus at
//    least one of conditions (ii)-(vii)
bool c6(std::uint64_t seed, std::ostringstream& out) {
  const std::vector<std::pair<std::string, PairingSpec>> controls = {
      {"abssum", AbsSumPairing{}},
      {"combo(0)", ConvexComboPairing{0.0}},
      {"combo(0.5)", ConvexComboPairing{0.5}}};
  bool ok = true;
  for (const auto& [name, pairing] : controls) {
    RegularityOptions opts;
    opts.count = 10000;
    opts.dim = 4;
    opts.seed = derive_seed(seed, 0x800);
    RegularityReport rep = check_regularity(pairing, opts);
    bool straight_fail = !rep.straight_angle.pass && !rep.straight_angle.counterexample.empty();
    bool other_fail = !rep.partial_linearity.pass || !rep.jmt_domination.pass ||
                      !rep.lumer_inequality.pass || !rep.curve_norm_derivative.pass ||
                      !rep.affine_curve_norm.pass || !rep.lumer_equality.pass;
    if (!straight_fail || !other_fail) {
      ok = false;
      out << name << ": straight_fail=" << straight_fail << " other_fail=" << other_fail << "; ";
    }
  }
  // direct machine check of the canonical counterexample x = e1
  Vector e1 = Vector::Unit(4, 0);
  double abssum_val = pairing_eval(AbsSumPairing{}, -e1, e1);
  double combo_val = pairing_eval(ConvexComboPairing{0.5}, -e1, e1);
  if (abssum_val != 1.0 || combo_val != 0.0) {
    ok = false;
    out << "canonical counterexample values off: " << abssum_val << ", " << combo_val;
  }
  if (ok) out << "all controls fail straight angle and at least one of (ii)-(vii)";
  return ok;
}

// 7. Lumer witnesses: exact for linf, epsilon-tight for l1
bool c7(std::uint64_t seed, std::ostringstream& out) {
  double worst_inf = 0.0, worst_l1 = 0.0;
  const double eps = 1e-4;
  for (int i = 0; i < 1000; ++i) {
    Index n = 2 + (i % 5);
    Matrix A = random_matrix(derive_seed(seed, 0x900 + static_cast<std::uint64_t>(i)), n);
    Vector w = lumer_witness(LinfNorm{}, A);
    worst_inf = std::max(worst_inf,
                         std::abs(pairing_eval(MaxPairing{}, A * w, w) - mu_inf_formula(A)));
    Vector w1 = lumer_witness(L1Norm{}, A, eps);
    double bound = 2.0 * static_cast<double>(n) * A.cwiseAbs().maxCoeff() * eps;
    double shortfall = mu_one_formula(A) - bound - pairing_eval(SignPairing{}, A * w1, w1);
    worst_l1 = std::max(worst_l1, shortfall);
  }
  out << "worst linf witness error = " << worst_inf << ", worst l1 shortfall vs mu_1 - 2n max|a| eps = "
      << worst_l1;
  return worst_inf < 1e-12 && worst_l1 <= 1e-12;
}

// 8. curve norm derivative + Dini relations on the built-in curve suite
bool c8(std::uint64_t seed, std::ostringstream& out) {
  bool ok = true;
  for (Index n : {2, 3, 5}) {
    std::vector<std::pair<NormSpec, PairingSpec>> setups = {
        {L1Norm{}, SignPairing{}},
        {LpNorm{2.0}, LpPairing{2.0}},
        {LinfNorm{}, MaxPairing{}}};
    Matrix W(n + 1, n);
    for (std::uint64_t attempt = 0;; ++attempt) {
      W = Rng(derive_seed(seed, 0xA00 + attempt)).uniform_matrix(n + 1, n, -1.0, 1.0);
      if (validate_norm_spec(PolyhedralMaxNorm{W}).ok) break;
    }
    setups.emplace_back(PolyhedralMaxNorm{W}, PolyhedralMaxPairing{W});
    std::vector<double> grid;
    for (int i = 0; i < 21; ++i) grid.push_back(-1.0 + 0.1 * i + 0.0123456789);
    for (const auto& [norm, pairing] : setups) {
      for (const auto& curve : builtin_curve_suite(n, derive_seed(seed, 0xA10))) {
        CheckRecord rec = curve_norm_check(norm, pairing, curve, grid);
        if (!rec.pass) {
          ok = false;
          out << norm_kind_name(norm) << "/" << curve.name << " violation "
              << rec.worst_violation << " at " << rec.counterexample << "; ";
        }
      }
    }
  }
  // linf index crossing: x(t) = (1, t) crosses at t = 1
  Curve crossing{"crossing",
                 [](double t) -> Vector { return Vector{{1.0, t}}; },
                 [](double) -> Vector { return Vector{{0.0, 1.0}}; }};
  std::vector<double> cross_grid = {0.5, 0.75, 1.0, 1.25, 1.5};
  CheckRecord rec = curve_norm_check(LinfNorm{}, MaxPairing{}, crossing, cross_grid);
  if (!rec.pass) {
    ok = false;
    out << "linf crossing violation " << rec.worst_violation << "; ";
  }
  if (ok) out << "curve formula and Dini relations hold at all stable grid points";
  return ok;
}

// 9. contraction end-to-end: true envelope accepted, wrong rate rejected
bool c9(std::uint64_t, std::ostringstream& out) {
  Matrix A(2, 2);
  A << -2, 1, 0, -3;
  VectorFieldSpec vf = LinearField{A};
  Vector x0{{1.0, 1.0}}, y0{{0.0, 0.0}};
  ContractionReport good = contraction_verify(vf, LinfNorm{}, x0, y0, 0.0, 5.0, 1e-3, -1.0);

  Matrix B(2, 2);
  B << 0, 2, 0, 0;
  ContractionReport bad = contraction_verify(LinearField{B}, LinfNorm{}, x0, y0, 0.0, 5.0,
                                             1e-3, -1.0);
  bool bad_rejected = false;
  std::string witness;
  for (const auto& c : bad.conditions)
    if (c.name == "exponential_envelope" && !c.pass && !c.detail.empty()) {
      bad_rejected = true;
      witness = c.detail;
    }
  out << "good case all_pass=" << good.all_pass() << ", wrong-b case rejected with " << witness;
  return good.all_pass() && bad_rejected;
}

// 10. almost-uniqueness: zero disagreements on continuous draws, recorded
//     disagreements once tie/zero atoms are forced in
bool c10(std::uint64_t seed, std::ostringstream& out) {
  const double tol = 1e-5;
  UniquenessProbe a = almost_uniqueness_probe(SignPairing{}, JmtUpperPairing{L1Norm{}},
                                              derive_seed(seed, 0xB00), 10000, tol, 3, 0.0);
  UniquenessProbe b = almost_uniqueness_probe(MaxPairing{}, MinIndexLgPairing{},
                                              derive_seed(seed, 0xB01), 10000, tol, 3, 0.0);
  UniquenessProbe a_atoms = almost_uniqueness_probe(SignPairing{}, JmtUpperPairing{L1Norm{}},
                                                    derive_seed(seed, 0xB02), 10000, tol, 3, 0.6);
  UniquenessProbe b_atoms = almost_uniqueness_probe(MaxPairing{}, MinIndexLgPairing{},
                                                    derive_seed(seed, 0xB03), 10000, tol, 3, 0.6);
  out << "continuous: " << a.disagreements << " + " << b.disagreements
      << " disagreements, with atoms: " << a_atoms.disagreements << " + "
      << b_atoms.disagreements;
  return a.disagreements == 0 && b.disagreements == 0 && a_atoms.disagreements > 0 &&
         b_atoms.disagreements > 0 && !a_atoms.examples.empty() && !b_atoms.examples.empty();
}

const Criterion kCriteria[] = {
    {1, "closed-form vs limit-oracle log norms (l1/linf/l2, 200 matrices)", 30.0, c1},
    {2, "polyhedral LP: gamma* = mu_inf (W=I) and mu_1 (l1 patterns)", 120.0, c2},
    {3, "max pairing = numeric linf upper JMT on 1e4 pairs with ties", 60.0, c3},
    {4, "l1 upper JMT closed form vs numeric on 1e4 pairs with zeros", 0.0, c4},
    {5, "regularity positive suite: all seven conditions pass", 0.0, c5},
    {6, "regularity negative suite: controls fail with counterexamples", 0.0, c6},
    {7, "Lumer witnesses: linf exact to 1e-12, l1 within 2n max|a| eps", 0.0, c7},
    {8, "curve norm derivative and Dini relations on the curve suite", 0.0, c8},
    {9, "contraction envelope accepted at b=-1, wrong b rejected", 10.0, c9},
    {10, "almost-uniqueness: 0 continuous disagreements, atoms disagree", 0.0, c10},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> results;
  for (const auto& c : kCriteria) {
    CriterionResult r;
    r.index = c.index;
    r.title = c.title;
    std::ostringstream detail;
    auto start = std::chrono::steady_clock::now();
    try {
      r.pass = c.body(derive_seed(seed, static_cast<std::uint64_t>(c.index)), detail);
    } catch (const std::exception& e) {
      r.pass = false;
      detail << " threw: " << e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && r.seconds > c.time_limit_s) {
      r.pass = false;
      detail << " (exceeded " << c.time_limit_s << " s budget)";
    }
    r.detail = detail.str();
    results.push_back(std::move(r));
  }
  return results;
}

bool print_acceptance(std::ostream& os, std::uint64_t seed) {
  bool all = true;
  for (const auto& r : run_acceptance(seed)) {
    os << (r.pass ? "[PASS] " : "[FAIL] ") << std::setw(2) << r.index << ". " << r.title << " ["
       << std::fixed << std::setprecision(2) << r.seconds << "s] " << r.detail << "\n";
    os.unsetf(std::ios::fixed);
    os << std::setprecision(6);
    all = all && r.pass;
  }
  os << (all ? "all criteria passed" : "CRITERIA FAILED") << "\n";
  return all;
}

}  // namespace lognormlab
