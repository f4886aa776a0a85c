// lognormlab: weak pairings, logarithmic norms, polyhedral LP certificates,
// regularity property testing, and contraction verification for ODE systems.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lognormlab/json_io.hpp"
#include "lognormlab/selftest.hpp"

namespace {

using namespace lognormlab;

// Option values are either inline JSON (first character '{' or '[') or a
// path to a JSON file.
Json load_json_arg(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return Json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw InputError("cannot open file: " + arg);
  return Json::parse(in);
}

struct Output {
  std::string format = "json";
  std::string path;

  void emit(const Json& j, const std::string& text) const {
    std::ostringstream buf;
    if (format == "json")
      buf << j.dump() << "\n";
    else
      buf << text;
    if (path.empty()) {
      std::cout << buf.str();
    } else {
      std::ofstream out(path);
      if (!out) throw InputError("cannot open output file: " + path);
      out << buf.str();
    }
  }
};

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_option("--format", out.format, "Output format: json (default) or text")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", out.path, "Write the report to this file instead of stdout");
}

std::string describe_checks(const RegularityReport& rep) {
  std::ostringstream os;
  os << "pairing " << rep.pairing_kind << " (seed " << rep.seed << ")\n";
  auto line = [&](const CheckRecord& c) {
    os << "  " << (c.pass ? "pass " : "FAIL ") << c.name << "  worst violation "
       << c.worst_violation << " (tol " << c.tolerance << ", " << c.samples << " samples)";
    if (!c.counterexample.empty()) os << "\n       counterexample: " << c.counterexample;
    os << "\n";
  };
  line(rep.wp_axioms);
  for (const auto* c : rep.seven()) line(*c);
  line(rep.lg_check);
  os << "  lg_representable: " << (rep.lg_representable ? "yes" : "no") << "\n";
  os << "  lumer gap delta: " << rep.lumer_gap_delta << "\n";
  os << (rep.all_pass() ? "ALL CHECKS PASS" : "CHECKS FAILED") << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "lognormlab: norms, weak pairings, logarithmic norms and contraction "
      "certificates on R^n"};
  app.require_subcommand(1);
  app.fallthrough();  // --seed may follow the subcommand name

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Seed for all sampled computation (default 0)");

  int exit_code = 0;

  // --- norm ----------------------------------------------------------------
  auto* norm_cmd = app.add_subcommand(
      "norm", "Evaluate or validate a norm spec (l1, linf, lp, weighted, polyhedral max)");
  std::string norm_spec_arg, norm_x_arg;
  Output norm_out;
  norm_cmd->add_option("--norm", norm_spec_arg, "Norm spec, inline JSON or a file path")
      ->required();
  norm_cmd->add_option("--x", norm_x_arg, "Vector to evaluate; omit to only validate the spec");
  add_output_flags(norm_cmd, norm_out);
  norm_cmd->callback([&] {
    NormSpec spec = norm_spec_from_json(load_json_arg(norm_spec_arg));
    ValidationReport v = validate_norm_spec(spec);
    if (norm_x_arg.empty()) {
      Json j{{"kind", norm_kind_name(spec)}, {"valid", v.ok}};
      if (!v.ok) j["message"] = v.message;
      norm_out.emit(j, (v.ok ? "valid " : "INVALID ") + norm_kind_name(spec) + " " + v.message +
                           "\n");
      exit_code = v.ok ? 0 : 1;
      return;
    }
    if (!v.ok) throw SpecError("invalid norm spec: " + v.message);
    Vector x = vector_from_json(load_json_arg(norm_x_arg));
    double value = norm_eval(spec, x);
    norm_out.emit(Json{{"value", value}}, "||x|| = " + std::to_string(value) + "\n");
  });

  // --- pairing ---------------------------------------------------------------
  auto* pair_cmd = app.add_subcommand(
      "pairing",
      "Evaluate a weak pairing [[x,y]]: sign, max, lp, weighted, polyhedral max, "
      "min-index LG, the numeric JMT pairings (the l1 upper JMT is the Deimling "
      "pairing), and the irregular controls");
  std::string pair_spec_arg, pair_x_arg, pair_y_arg;
  Output pair_out;
  pair_cmd->add_option("--pairing", pair_spec_arg, "Pairing spec, inline JSON or a file path")
      ->required();
  pair_cmd->add_option("--x", pair_x_arg, "First argument vector")->required();
  pair_cmd->add_option("--y", pair_y_arg, "Second argument vector")->required();
  add_output_flags(pair_cmd, pair_out);
  pair_cmd->callback([&] {
    PairingSpec spec = pairing_spec_from_json(load_json_arg(pair_spec_arg));
    ensure_valid(spec);
    Vector x = vector_from_json(load_json_arg(pair_x_arg));
    Vector y = vector_from_json(load_json_arg(pair_y_arg));
    double value = pairing_eval(spec, x, y);
    pair_out.emit(Json{{"value", value}}, "[[x,y]] = " + std::to_string(value) + "\n");
  });

  // --- lognorm ---------------------------------------------------------------
  auto* ln_cmd = app.add_subcommand(
      "lognorm",
      "Compute the logarithmic norm mu(A) = sup of [[Ax,x]] over unit x (Lumer's "
      "property): closed forms for l1/linf/l2-weighted, linear program for "
      "polyhedral max norms, sampled Lumer bound for general p");
  std::string ln_norm_arg, ln_matrix_arg;
  bool ln_oracle = false;
  Output ln_out;
  ln_cmd->add_option("--norm", ln_norm_arg, "Norm spec")->required();
  ln_cmd->add_option("--matrix", ln_matrix_arg, "Square matrix A, inline JSON or file")
      ->required();
  ln_cmd->add_flag("--oracle", ln_oracle,
                   "Also report the limit-definition oracle (||I + hA|| - 1)/h");
  add_output_flags(ln_cmd, ln_out);
  ln_cmd->callback([&] {
    NormSpec spec = norm_spec_from_json(load_json_arg(ln_norm_arg));
    Matrix A = matrix_from_json(load_json_arg(ln_matrix_arg));
    LogNormResult res = lognorm(spec, A);
    Json j = to_json(res);
    std::ostringstream text;
    text << "mu(A) = " << res.value << " [" << to_string(res.method) << "]\n";
    if (ln_oracle) {
      double oracle = lognorm_limit_oracle(spec, A, default_jmt_schedule(), seed);
      j["oracle"] = oracle;
      text << "limit oracle = " << oracle << "\n";
    }
    ln_out.emit(j, text.str());
  });

  // --- polylp ----------------------------------------------------------------
  auto* lp_cmd = app.add_subcommand(
      "polylp",
      "Solve the polyhedral log-norm program min mu_inf(H) s.t. WA = HW as an LP "
      "over (H, T, gamma)");
  std::string lp_W_arg, lp_A_arg;
  Output lp_out;
  lp_cmd->add_option("--W", lp_W_arg, "Full-column-rank m x n matrix W")->required();
  lp_cmd->add_option("--A", lp_A_arg, "Square n x n matrix A")->required();
  add_output_flags(lp_cmd, lp_out);
  lp_cmd->callback([&] {
    Matrix W = matrix_from_json(load_json_arg(lp_W_arg));
    Matrix A = matrix_from_json(load_json_arg(lp_A_arg));
    LinearProgram lp = build_polyhedral_lognorm_lp(W, A);
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) {
      lp_out.emit(Json{{"status", to_string(sol.status)}},
                  std::string("LP status: ") + to_string(sol.status) + "\n");
      exit_code = 1;
      return;
    }
    auto [H, gamma] = extract_H(lp, sol, W.rows());
    Json j{{"gamma", gamma},
           {"H", to_json(H)},
           {"iterations", sol.iterations},
           {"variables", lp.num_vars()}};
    std::ostringstream text;
    text << "gamma = " << gamma << " (mu_inf(H) = " << mu_inf_formula(H) << ", "
         << sol.iterations << " pivots)\n";
    lp_out.emit(j, text.str());
  });

  // --- regularity --------------------------------------------------------------
  auto* reg_cmd = app.add_subcommand(
      "regularity",
      "Property-test a pairing against the seven equivalent conditions of the "
      "Characterization Theorem (straight angle, partial linearity, JMT domination, "
      "one-sided Lumer, curve norm derivative, affine curves, Lumer equality)");
  std::string reg_pairing_arg;
  long reg_samples = 10000;
  Index reg_dim = 4;
  double reg_tol = 1.0;
  Output reg_out;
  reg_cmd->add_option("--pairing", reg_pairing_arg, "Pairing spec")->required();
  reg_cmd->add_option("--samples", reg_samples, "Samples per check (default 10000)");
  reg_cmd->add_option("--dim", reg_dim, "Dimension when the pairing does not pin one");
  reg_cmd->add_option("--tol", reg_tol, "Multiplier applied to the tolerance ladder");
  add_output_flags(reg_cmd, reg_out);
  reg_cmd->callback([&] {
    PairingSpec spec = pairing_spec_from_json(load_json_arg(reg_pairing_arg));
    RegularityOptions opts;
    opts.count = reg_samples;
    opts.dim = reg_dim;
    opts.seed = seed;
    opts.tol_scale = reg_tol;
    RegularityReport rep = check_regularity(spec, opts);
    reg_out.emit(to_json(rep), describe_checks(rep));
    exit_code = rep.all_pass() ? 0 : 1;
  });

  // --- contract ---------------------------------------------------------------
  auto* con_cmd = app.add_subcommand(
      "contract",
      "Verify contraction of an ODE system: Jacobian log-norm bound over a box "
      "and trajectory envelope/Dini checks, the equivalent conditions of the "
      "Contraction Criteria for C1-smooth vector fields");
  std::string con_system_arg, con_norm_arg, con_x0_arg, con_y0_arg;
  std::string con_lo_arg, con_hi_arg;
  double con_b = std::numeric_limits<double>::quiet_NaN();
  double con_t0 = 0.0, con_t1 = 5.0, con_dt = 1e-3;
  int con_grid = 5;
  Output con_out;
  con_cmd->add_option("--system", con_system_arg, "Vector field spec (linear/affine/hopfield)")
      ->required();
  con_cmd->add_option("--norm", con_norm_arg, "Norm spec for the envelope")->required();
  con_cmd->add_option("--x0", con_x0_arg, "First initial state")->required();
  con_cmd->add_option("--y0", con_y0_arg, "Second initial state")->required();
  con_cmd->add_option("--b", con_b, "Contraction rate; omit to derive from --region-lo/hi");
  con_cmd->add_option("--region-lo", con_lo_arg, "Box lower corner for the Jacobian bound");
  con_cmd->add_option("--region-hi", con_hi_arg, "Box upper corner for the Jacobian bound");
  con_cmd->add_option("--grid", con_grid, "Grid points per axis for the Jacobian bound");
  con_cmd->add_option("--t0", con_t0, "Start time (default 0)");
  con_cmd->add_option("--t1", con_t1, "End time (default 5)");
  con_cmd->add_option("--dt", con_dt, "Integrator step (default 1e-3)");
  add_output_flags(con_cmd, con_out);
  con_cmd->callback([&] {
    VectorFieldSpec vf = vector_field_from_json(load_json_arg(con_system_arg));
    NormSpec norm = norm_spec_from_json(load_json_arg(con_norm_arg));
    Vector x0 = vector_from_json(load_json_arg(con_x0_arg));
    Vector y0 = vector_from_json(load_json_arg(con_y0_arg));
    Json j;
    std::ostringstream text;
    double b = con_b;
    std::vector<ConditionRecord> region_conditions;
    if (!con_lo_arg.empty() && !con_hi_arg.empty()) {
      Box box{vector_from_json(load_json_arg(con_lo_arg)),
              vector_from_json(load_json_arg(con_hi_arg))};
      double b_grid = jacobian_mu_bound(vf, norm, box, con_grid);
      if (std::isnan(b)) b = b_grid;
      j["b_from_jacobian_grid"] = b_grid;
      j["assumption"] = "region forward invariance not verified";
      text << "Jacobian grid bound " << b_grid << " (forward invariance assumed)\n";
      ConditionRecord mu_rec{"jacobian_mu_bound", b_grid <= b + 1e-9, b_grid - b, ""};
      region_conditions.push_back(mu_rec);
      double b_osl = osl_estimate(vf, natural_pairing(norm), box, seed, 2000);
      ConditionRecord osl_rec{"one_sided_lipschitz", b_osl <= b + 1e-6, b_osl - b, ""};
      region_conditions.push_back(osl_rec);
    } else if (std::isnan(b)) {
      throw InputError("contract: give --b or both --region-lo and --region-hi");
    }
    ContractionReport rep = contraction_verify(vf, norm, x0, y0, con_t0, con_t1, con_dt, b);
    rep.conditions.insert(rep.conditions.begin(), region_conditions.begin(),
                          region_conditions.end());
    Json jr = to_json(rep);
    for (auto& [k, v] : j.items()) jr[k] = v;
    for (const auto& c : rep.conditions)
      text << "  " << (c.pass ? "pass " : "FAIL ") << c.name << " worst margin "
           << c.worst_margin << (c.detail.empty() ? "" : " at " + c.detail) << "\n";
    text << (rep.all_pass() ? "CONTRACTION VERIFIED" : "CONTRACTION CHECK FAILED") << "\n";
    con_out.emit(jr, text.str());
    exit_code = rep.all_pass() ? 0 : 1;
  });

  // --- selftest ----------------------------------------------------------------
  auto* self_cmd =
      app.add_subcommand("selftest", "Run the acceptance suite and print a pass/fail matrix");
  self_cmd->callback([&] { exit_code = print_acceptance(std::cout, seed) ? 0 : 1; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Json::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const SpecError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
