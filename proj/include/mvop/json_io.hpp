#pragma once

#include "json.hpp"

#include "mvop/engine.hpp"
#include "mvop/krawtchouk.hpp"

namespace mvop {

using Json = nlohmann::ordered_json;

/// [[[re, im], ...] row-major]
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// { "size": n, "coeffs": [ matrix, ... ] }
Json matpoly_to_json(const MatPoly& p);
MatPoly matpoly_from_json(const Json& j);

/// { identity, indices, status, lhs, rhs, kind: "exact" } per record
Json exact_report_to_json(const ExactReport& rep);

Json family_to_json(const FamilyDescriptor& fam);
Json deformed_to_json(const DeformedFamily& df);

}  // namespace mvop
