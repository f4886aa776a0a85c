#include "lognormlab/json_io.hpp"

#include <cmath>

namespace lognormlab {

namespace {

double bound_from(const Json& j, double inf_value) {
  if (j.is_null()) return inf_value;
  return j.get<double>();
}

Json bound_to(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

[[noreturn]] void bad(const std::string& what) { throw InputError("json: " + what); }

std::string kind_of(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    bad("expected an object with a string \"kind\" field, got " + j.dump());
  return j.at("kind").get<std::string>();
}

}  // namespace

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) bad("vector must be an array, got " + j.dump());
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) bad("vector entries must be numbers");
    v[static_cast<Index>(i)] = j[i].get<double>();
  }
  return v;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad("matrix must be a nonempty array of arrays");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) bad("matrix rows must be arrays");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) bad("matrix rows must have equal length");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) bad("matrix entries must be numbers");
      m(static_cast<Index>(i), static_cast<Index>(k)) = j[i][k].get<double>();
    }
  }
  return m;
}

Json to_json(const NormSpec& spec) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, L1Norm>) return Json{{"kind", "l1"}};
        else if constexpr (std::is_same_v<T, LinfNorm>) return Json{{"kind", "linf"}};
        else if constexpr (std::is_same_v<T, LpNorm>) return Json{{"kind", "lp"}, {"p", s.p}};
        else if constexpr (std::is_same_v<T, L2WeightedNorm>)
          return Json{{"kind", "l2w"}, {"R", to_json(s.R)}};
        else if constexpr (std::is_same_v<T, LpWeightedNorm>)
          return Json{{"kind", "lpw"}, {"p", s.p}, {"R", to_json(s.R)}};
        else return Json{{"kind", "poly"}, {"W", to_json(s.W)}};
      },
      spec);
}

NormSpec norm_spec_from_json(const Json& j) {
  std::string kind = kind_of(j);
  if (kind == "l1") return L1Norm{};
  if (kind == "linf") return LinfNorm{};
  if (kind == "lp") return LpNorm{j.at("p").get<double>()};
  if (kind == "l2w") return L2WeightedNorm{matrix_from_json(j.at("R"))};
  if (kind == "lpw") return LpWeightedNorm{j.at("p").get<double>(), matrix_from_json(j.at("R"))};
  if (kind == "poly") return PolyhedralMaxNorm{matrix_from_json(j.at("W"))};
  bad("unknown norm kind \"" + kind + "\"");
}

Json to_json(const PairingSpec& spec) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SignPairing>) return Json{{"kind", "sign"}};
        else if constexpr (std::is_same_v<T, MaxPairing>) return Json{{"kind", "max"}};
        else if constexpr (std::is_same_v<T, LpPairing>) return Json{{"kind", "lp"}, {"p", s.p}};
        else if constexpr (std::is_same_v<T, L2WeightedPairing>)
          return Json{{"kind", "l2w"}, {"P", to_json(s.P)}};
        else if constexpr (std::is_same_v<T, LpWeightedPairing>)
          return Json{{"kind", "lpw"}, {"p", s.p}, {"R", to_json(s.R)}};
        else if constexpr (std::is_same_v<T, PolyhedralMaxPairing>)
          return Json{{"kind", "poly"}, {"W", to_json(s.W)}};
        else if constexpr (std::is_same_v<T, MinIndexLgPairing>) return Json{{"kind", "minidx"}};
        else if constexpr (std::is_same_v<T, AbsSumPairing>) return Json{{"kind", "abssum"}};
        else if constexpr (std::is_same_v<T, ConvexComboPairing>)
          return Json{{"kind", "combo"}, {"alpha", s.alpha}};
        else if constexpr (std::is_same_v<T, JmtUpperPairing>)
          return Json{{"kind", "jmt+"}, {"norm", to_json(s.norm)}};
        else return Json{{"kind", "jmt-"}, {"norm", to_json(s.norm)}};
      },
      spec);
}

PairingSpec pairing_spec_from_json(const Json& j) {
  std::string kind = kind_of(j);
  if (kind == "sign") return SignPairing{};
  if (kind == "max") return MaxPairing{};
  if (kind == "lp") return LpPairing{j.at("p").get<double>()};
  if (kind == "l2w") return L2WeightedPairing{matrix_from_json(j.at("P"))};
  if (kind == "lpw") return LpWeightedPairing{j.at("p").get<double>(), matrix_from_json(j.at("R"))};
  if (kind == "poly") return PolyhedralMaxPairing{matrix_from_json(j.at("W"))};
  if (kind == "minidx") return MinIndexLgPairing{};
  if (kind == "abssum") return AbsSumPairing{};
  if (kind == "combo") return ConvexComboPairing{j.at("alpha").get<double>()};
  if (kind == "jmt+") return JmtUpperPairing{norm_spec_from_json(j.at("norm"))};
  if (kind == "jmt-") return JmtLowerPairing{norm_spec_from_json(j.at("norm"))};
  bad("unknown pairing kind \"" + kind + "\"");
}

Json to_json(const VectorFieldSpec& vf) {
  return std::visit(
      [](const auto& f) -> Json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LinearField>)
          return Json{{"kind", "linear"}, {"A", to_json(f.A)}};
        else if constexpr (std::is_same_v<T, AffineField>)
          return Json{{"kind", "affine"}, {"A", to_json(f.A)}, {"b", to_json(f.b)}};
        else
          return Json{{"kind", "hopfield"}, {"Alin", to_json(f.A_lin)}, {"S", to_json(f.S)}};
      },
      vf);
}

VectorFieldSpec vector_field_from_json(const Json& j) {
  std::string kind = kind_of(j);
  if (kind == "linear") return LinearField{matrix_from_json(j.at("A"))};
  if (kind == "affine")
    return AffineField{matrix_from_json(j.at("A")), vector_from_json(j.at("b"))};
  if (kind == "hopfield")
    return HopfieldField{matrix_from_json(j.at("Alin")), matrix_from_json(j.at("S"))};
  bad("unknown system kind \"" + kind + "\"");
}

Json to_json(const LinearProgram& lp) {
  Json bounds = Json::array();
  for (Index i = 0; i < lp.num_vars(); ++i)
    bounds.push_back(Json::array({bound_to(lp.lo[i]), bound_to(lp.hi[i])}));
  return Json{{"c", to_json(lp.c)},     {"Aeq", to_json(lp.A_eq)}, {"beq", to_json(lp.b_eq)},
              {"Aub", to_json(lp.A_ub)}, {"bub", to_json(lp.b_ub)}, {"bounds", bounds}};
}

LinearProgram lp_from_json(const Json& j) {
  LinearProgram lp;
  lp.c = vector_from_json(j.at("c"));
  lp.A_eq = j.contains("Aeq") && !j.at("Aeq").empty() ? matrix_from_json(j.at("Aeq"))
                                                      : Matrix(0, lp.c.size());
  lp.b_eq = j.contains("beq") ? vector_from_json(j.at("beq")) : Vector(0);
  lp.A_ub = j.contains("Aub") && !j.at("Aub").empty() ? matrix_from_json(j.at("Aub"))
                                                      : Matrix(0, lp.c.size());
  lp.b_ub = j.contains("bub") ? vector_from_json(j.at("bub")) : Vector(0);
  const Index n = lp.c.size();
  lp.lo = Vector::Constant(n, -std::numeric_limits<double>::infinity());
  lp.hi = Vector::Constant(n, std::numeric_limits<double>::infinity());
  if (j.contains("bounds")) {
    const Json& b = j.at("bounds");
    if (!b.is_array() || b.size() != static_cast<std::size_t>(n))
      bad("bounds must be an array of [lo, hi] pairs, one per variable");
    for (Index i = 0; i < n; ++i) {
      lp.lo[i] = bound_from(b[static_cast<std::size_t>(i)].at(0),
                            -std::numeric_limits<double>::infinity());
      lp.hi[i] = bound_from(b[static_cast<std::size_t>(i)].at(1),
                            std::numeric_limits<double>::infinity());
    }
  }
  return lp;
}

Json to_json(const LpSolution& sol) {
  Json j{{"status", to_string(sol.status)}, {"iterations", sol.iterations}};
  if (sol.status == LpStatus::optimal) {
    j["z"] = to_json(sol.z);
    j["objective_value"] = sol.objective_value;
  }
  return j;
}

Json to_json(const LogNormResult& res) {
  Json j{{"value", res.value}, {"method", to_string(res.method)},
         {"diagnostics", res.diagnostics}};
  if (res.witness) j["witness"] = to_json(*res.witness);
  if (res.witness_pairing) j["witness_pairing"] = *res.witness_pairing;
  return j;
}

Json to_json(const CheckRecord& rec) {
  Json j{{"name", rec.name},
         {"pass", rec.pass},
         {"samples", rec.samples},
         {"tolerance", rec.tolerance},
         {"worst_violation", rec.worst_violation}};
  if (!rec.counterexample.empty()) {
    // counterexamples are themselves serialized as JSON text
    j["counterexample"] = Json::parse(rec.counterexample, nullptr, false);
    if (j["counterexample"].is_discarded()) j["counterexample"] = rec.counterexample;
  }
  return j;
}

Json to_json(const RegularityReport& rep) {
  Json checks = Json::array();
  for (const auto* c : rep.seven()) checks.push_back(to_json(*c));
  return Json{{"pairing", rep.pairing_kind},
              {"seed", rep.seed},
              {"wp_axioms", to_json(rep.wp_axioms)},
              {"checks", checks},
              {"lg_representable", rep.lg_representable},
              {"lg_check", to_json(rep.lg_check)},
              {"lumer_gap_delta", rep.lumer_gap_delta},
              {"all_pass", rep.all_pass()}};
}

Json to_json(const ContractionReport& rep) {
  Json conds = Json::array();
  for (const auto& c : rep.conditions) {
    Json jc{{"name", c.name}, {"pass", c.pass}, {"worst_margin", c.worst_margin}};
    if (!c.detail.empty()) {
      jc["detail"] = Json::parse(c.detail, nullptr, false);
      if (jc["detail"].is_discarded()) jc["detail"] = c.detail;
    }
    conds.push_back(jc);
  }
  return Json{{"b_used", rep.b_used}, {"conditions", conds}, {"all_pass", rep.all_pass()}};
}

Json to_json(const UniquenessProbe& probe) {
  Json ex = Json::array();
  for (const auto& e : probe.examples) {
    Json je = Json::parse(e, nullptr, false);
    ex.push_back(je.is_discarded() ? Json(e) : je);
  }
  return Json{{"samples", probe.samples},
              {"disagreements", probe.disagreements},
              {"fraction", probe.fraction},
              {"examples", ex}};
}

}  // namespace lognormlab
