#pragma once

#include <json.hpp>

#include "lognormlab/contraction.hpp"
#include "lognormlab/lpsolve.hpp"
#include "lognormlab/regularity.hpp"

namespace lognormlab {

using Json = nlohmann::json;

// Matrices travel as row-major arrays of arrays of doubles, vectors as flat
// arrays.
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Vector vector_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);

// {"kind":"l1"} | {"kind":"linf"} | {"kind":"lp","p":3.0}
// {"kind":"l2w","R":[[..]]} | {"kind":"lpw","p":..,"R":[[..]]}
// {"kind":"poly","W":[[..]]}
Json to_json(const NormSpec& spec);
NormSpec norm_spec_from_json(const Json& j);

// {"kind":"sign"|"max"|"minidx"|"abssum"} | {"kind":"lp","p":..}
// {"kind":"l2w","P":[[..]]} | {"kind":"lpw","p":..,"R":[[..]]}
// {"kind":"poly","W":[[..]]} | {"kind":"combo","alpha":..}
// {"kind":"jmt+","norm":{..}} | {"kind":"jmt-","norm":{..}}
Json to_json(const PairingSpec& spec);
PairingSpec pairing_spec_from_json(const Json& j);

// {"kind":"linear","A":[[..]]} | {"kind":"affine","A":..,"b":[..]}
// {"kind":"hopfield","Alin":..,"S":..}
Json to_json(const VectorFieldSpec& vf);
VectorFieldSpec vector_field_from_json(const Json& j);

// {c, Aeq, beq, Aub, bub, bounds}; bounds entries are [lo, hi] with null
// standing for the respective infinity.
Json to_json(const LinearProgram& lp);
LinearProgram lp_from_json(const Json& j);
Json to_json(const LpSolution& sol);

Json to_json(const LogNormResult& res);
Json to_json(const CheckRecord& rec);
Json to_json(const RegularityReport& rep);
Json to_json(const ContractionReport& rep);
Json to_json(const UniquenessProbe& probe);

}  // namespace lognormlab
