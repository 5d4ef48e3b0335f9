#include "specconv/json_io.hpp"

#include <fstream>
#include <sstream>

#include "specconv/errors.hpp"

namespace specconv {

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(what + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

Vec vec_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array of numbers");
  Vec out;
  out.reserve(j.size());
  for (const Json& v : j) {
    if (!v.is_number()) throw InputError(what + " must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Matrix matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array of rows");
  if (j.empty()) return Matrix();
  std::vector<Vec> rows;
  for (const Json& r : j) rows.push_back(vec_from_json(r, what + " row"));
  const std::size_t cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError(what + " has rows of different lengths");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rows[i][c];
  }
  return m;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(Vec(m.row(i).begin(), m.row(i).end()));
  return out;
}

namespace {

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw InputError(what + " is missing \"" + key + "\"");
  return j.at(key);
}

}  // namespace

SetSpec set_from_json(const Json& j) {
  const Json& variant = field(j, "variant", "set");
  if (!variant.is_string()) throw InputError("set variant must be a string");
  const std::string v = variant.get<std::string>();
  if (v == "finite") {
    const Json& pts = field(j, "points", "finite set");
    if (!pts.is_array()) throw InputError("finite set points must be an array");
    std::vector<Vec> points;
    for (const Json& p : pts) points.push_back(vec_from_json(p, "finite set point"));
    return SetSpec::finite(std::move(points));
  }
  if (v == "hpoly") {
    Matrix a = matrix_from_json(field(j, "A", "hpoly set"), "hpoly A");
    Vec b = vec_from_json(field(j, "b", "hpoly set"), "hpoly b");
    std::size_t dim = a.cols();
    if (j.contains("dim")) {
      if (!j.at("dim").is_number_unsigned()) throw InputError("hpoly dim must be a positive integer");
      dim = j.at("dim").get<std::size_t>();
    }
    if (dim == 0) throw InputError("hpoly set with no rows needs \"dim\"");
    return SetSpec::hpoly(std::move(a), std::move(b), dim);
  }
  if (v == "sparse_ellipsoid") {
    Matrix a = matrix_from_json(field(j, "A", "sparse ellipsoid"), "ellipsoid A");
    const Json& k = field(j, "k", "sparse ellipsoid");
    if (!k.is_number_unsigned()) throw InputError("ellipsoid k must be a positive integer");
    return SetSpec::sparse_ellipsoid(std::move(a), k.get<std::size_t>());
  }
  throw InputError("unknown set variant '" + v + "'");
}

Json to_json(const SetSpec& s) {
  if (s.is_finite()) return {{"variant", "finite"}, {"points", s.points().points}};
  if (s.is_hpoly()) {
    Json out{{"variant", "hpoly"}, {"A", to_json(s.polyhedron().a)}, {"b", s.polyhedron().b}};
    if (s.polyhedron().a.rows() == 0) out["dim"] = s.dim();
    return out;
  }
  return {{"variant", "sparse_ellipsoid"}, {"A", to_json(s.ellipsoid().a)}, {"k", s.ellipsoid().k}};
}

PointV point_from_json(const SpectralSystem& sys, const Json& j) {
  if (j.is_object()) return point_from_json(sys, field(j, "point", "point file"));
  if (!j.is_array()) throw InputError("point must be an array");
  Vec flat;
  if (!j.empty() && j.front().is_array()) {
    const Matrix m = matrix_from_json(j, "point");
    if (m.rows() != sys.rows() || m.cols() != sys.cols())
      throw InputError("point shape does not match " + sys.name());
    flat = m.data();
  } else {
    flat = vec_from_json(j, "point");
  }
  if (flat.size() != sys.rows() * sys.cols())
    throw InputError("point has " + std::to_string(flat.size()) + " entries, " + sys.name() + " needs " +
                     std::to_string(sys.rows() * sys.cols()));
  PointV x{Matrix(sys.rows(), sys.cols(), std::move(flat))};
  check_point(sys, x);
  return x;
}

Json point_to_json(const SpectralSystem& sys, const PointV& x) {
  if (sys.is_vector()) return x.flat();
  return to_json(x.value);
}

Json to_json(const SpectralSystem& sys, const MembershipCertificate& c) {
  Json out;
  out["verdict"] = c.verdict;
  out["witness_u"] = c.witness_u ? Json(*c.witness_u) : Json(nullptr);
  out["weights"] = c.weights ? Json(*c.weights) : Json(nullptr);
  out["separator"] = c.separator ? point_to_json(sys, *c.separator) : Json(nullptr);
  out["closedness_certified"] = c.closedness_certified;
  return out;
}

Json to_json(const SupResult& s) {
  Json out;
  out["status"] = s.unbounded ? "unbounded" : "optimal";
  out["value"] = s.unbounded ? Json(nullptr) : Json(s.value);
  out["argmax_u"] = s.argmax_u ? Json(*s.argmax_u) : Json(nullptr);
  return out;
}

}  // namespace specconv
