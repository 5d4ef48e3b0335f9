#pragma once

#include <string>

#include "json.hpp"
#include "specconv/hull.hpp"
#include "specconv/sets.hpp"
#include "specconv/systems.hpp"

namespace specconv {

using Json = nlohmann::json;

/// Parses JSON text, rethrowing syntax errors as InputError.
Json parse_json(const std::string& text, const std::string& what);
/// Reads and parses a file; missing or unreadable files are InputError.
Json read_json_file(const std::string& path);

Vec vec_from_json(const Json& j, const std::string& what);
Matrix matrix_from_json(const Json& j, const std::string& what);
Json to_json(const Matrix& m);

/// {"variant":"finite","points":[[...]]} | {"variant":"hpoly","A":[[...]],"b":[...]} |
/// {"variant":"sparse_ellipsoid","A":[[...]],"k":2}. An hpoly with no rows needs "dim".
SetSpec set_from_json(const Json& j);
Json to_json(const SetSpec& s);

/// A point of V: a flat row-major array, a nested array of rows (matrix systems), or {"point": ...}.
PointV point_from_json(const SpectralSystem& sys, const Json& j);
/// Vector systems give a flat array, matrix systems an array of rows.
Json point_to_json(const SpectralSystem& sys, const PointV& x);

Json to_json(const SpectralSystem& sys, const MembershipCertificate& c);
Json to_json(const SupResult& s);

}  // namespace specconv
