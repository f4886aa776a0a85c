#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lognormlab/json_io.hpp"
#include "lognormlab/sampling.hpp"

using namespace lognormlab;

TEST_CASE("norm and pairing specs round-trip through their wire format") {
  Rng rng(1);
  Matrix R = rng.uniform_matrix(3, 3, -1.0, 1.0) + 2.0 * Matrix::Identity(3, 3);
  Matrix W = rng.uniform_matrix(4, 3, -1.0, 1.0) + Matrix::Identity(4, 3);
  Matrix Q = rng.uniform_matrix(3, 3, -1.0, 1.0);
  Matrix P = Q.transpose() * Q + Matrix::Identity(3, 3);

  std::vector<NormSpec> norms = {L1Norm{},           LinfNorm{},
                                 LpNorm{3.0},        L2WeightedNorm{R},
                                 LpWeightedNorm{2.5, R}, PolyhedralMaxNorm{W}};
  for (const auto& spec : norms) {
    NormSpec back = norm_spec_from_json(to_json(spec));
    CHECK(norm_spec_equal(spec, back));
    // serialization is stable byte-for-byte
    CHECK(to_json(spec).dump() == to_json(back).dump());
  }

  std::vector<PairingSpec> pairings = {SignPairing{},
                                       MaxPairing{},
                                       LpPairing{3.0},
                                       L2WeightedPairing{P},
                                       LpWeightedPairing{2.5, R},
                                       PolyhedralMaxPairing{W},
                                       MinIndexLgPairing{},
                                       AbsSumPairing{},
                                       ConvexComboPairing{0.5},
                                       JmtUpperPairing{LpNorm{3.0}},
                                       JmtLowerPairing{PolyhedralMaxNorm{W}}};
  for (const auto& spec : pairings) {
    PairingSpec back = pairing_spec_from_json(to_json(spec));
    CHECK(to_json(spec).dump() == to_json(back).dump());
    CHECK(pairing_kind_name(spec) == pairing_kind_name(back));
  }
}

TEST_CASE("documented inline forms parse") {
  CHECK(norm_kind_name(norm_spec_from_json(Json::parse(R"({"kind":"l1"})"))) == "l1");
  CHECK(norm_kind_name(norm_spec_from_json(Json::parse(R"({"kind":"lp","p":3.0})"))) == "lp");
  auto poly = norm_spec_from_json(Json::parse(R"({"kind":"poly","W":[[1,1],[1,-1]]})"));
  CHECK(std::get<PolyhedralMaxNorm>(poly).W(1, 1) == -1.0);
  auto combo = pairing_spec_from_json(Json::parse(R"({"kind":"combo","alpha":0.5})"));
  CHECK(std::get<ConvexComboPairing>(combo).alpha == 0.5);
  auto jmt = pairing_spec_from_json(Json::parse(R"({"kind":"jmt+","norm":{"kind":"linf"}})"));
  CHECK(std::holds_alternative<JmtUpperPairing>(jmt));
}

TEST_CASE("vector field specs round-trip") {
  Rng rng(2);
  Matrix A = rng.uniform_matrix(2, 2, -1.0, 1.0);
  Vector b = rng.normal_vector(2);
  std::vector<VectorFieldSpec> fields = {LinearField{A}, AffineField{A, b},
                                         HopfieldField{A, 0.5 * A}};
  for (const auto& vf : fields) {
    VectorFieldSpec back = vector_field_from_json(to_json(vf));
    CHECK(to_json(vf).dump() == to_json(back).dump());
  }
}

TEST_CASE("linear programs round-trip with infinite bounds as null") {
  Matrix A(2, 2);
  A << -2, 1, 0, -3;
  LinearProgram lp = build_polyhedral_lognorm_lp(Matrix::Identity(2, 2), A);
  Json j = to_json(lp);
  CHECK(j.at("bounds")[0][0].is_null());  // H variables are free
  CHECK(j.at("bounds")[4][0] == 0.0);     // T variables sit at lower bound 0
  LinearProgram back = lp_from_json(j);
  CHECK(back.c == lp.c);
  CHECK(back.A_eq == lp.A_eq);
  CHECK(back.b_ub == lp.b_ub);
  CHECK(back.lo == lp.lo);
  CHECK(back.hi == lp.hi);
  // solving the round-tripped program gives the identical optimum
  CHECK(solve_lp(back).objective_value == solve_lp(lp).objective_value);
}

TEST_CASE("malformed payloads raise input errors") {
  CHECK_THROWS_AS(norm_spec_from_json(Json::parse(R"({"type":"l1"})")), InputError);
  CHECK_THROWS_AS(norm_spec_from_json(Json::parse(R"({"kind":"nope"})")), InputError);
  CHECK_THROWS_AS(pairing_spec_from_json(Json::parse(R"([1,2])")), InputError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"([[1,2],[3]])")), InputError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"([])")), InputError);
  CHECK_THROWS_AS(vector_from_json(Json::parse(R"({"a":1})")), InputError);
}

TEST_CASE("result reports serialize with stable keys") {
  Matrix A(2, 2);
  A << -2, 1, 0, -3;
  Json j = to_json(lognorm(LinfNorm{}, A));
  CHECK(j.at("value") == -1.0);
  CHECK(j.at("method") == "closed_form");
  CHECK(j.contains("witness"));

  RegularityOptions opts;
  opts.count = 200;
  opts.dim = 2;
  RegularityReport rep = check_regularity(MaxPairing{}, opts);
  Json jr = to_json(rep);
  CHECK(jr.at("pairing") == "max");
  CHECK(jr.at("checks").size() == 7);
  CHECK(jr.at("all_pass").is_boolean());
  CHECK(jr.contains("lumer_gap_delta"));
}
