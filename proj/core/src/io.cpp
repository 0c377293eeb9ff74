#include "mellip/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace mellip {

namespace {

Mat mat_from_rows(const Json& rows, const std::string& what) {
  if (!rows.is_array() || rows.empty())
    throw error(errc::parse_error, what + ": expected a non-empty array of rows");
  const auto nrows = rows.size();
  const auto ncols = rows[0].size();
  Mat m(static_cast<int>(nrows), static_cast<int>(ncols));
  for (std::size_t i = 0; i < nrows; ++i) {
    if (!rows[i].is_array() || rows[i].size() != ncols)
      throw error(errc::parse_error, what + ": ragged matrix rows");
    for (std::size_t j = 0; j < ncols; ++j) {
      if (!rows[i][j].is_number())
        throw error(errc::parse_error, what + ": matrix entries must be numbers");
      m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j].get<double>();
    }
  }
  return m;
}

Json rows_from_mat(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

double parse_p(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity")
      return std::numeric_limits<double>::infinity();
    throw error(errc::parse_error, "lp_ball p: unknown string '" + s + "'");
  }
  if (!j.is_number()) throw error(errc::parse_error, "lp_ball p must be a number or \"inf\"");
  return j.get<double>();
}

}  // namespace

Json body_to_json(const Body& body) {
  Json j;
  j["kind"] = to_string(body.kind());
  j["dim"] = body.dim();
  Json params;
  switch (body.kind()) {
    case BodyKind::lp_ball: {
      const auto& b = body.as_lp_ball();
      if (std::isinf(b.p))
        params["p"] = "inf";
      else
        params["p"] = b.p;
      params["radius"] = b.radius;
      break;
    }
    case BodyKind::sym_polytope:
      params["rows"] = rows_from_mat(body.as_sym_polytope().rows);
      break;
    case BodyKind::ellipsoid:
      params["shape"] = rows_from_mat(body.as_ellipsoid().shape);
      break;
    case BodyKind::linear_image: {
      const auto& b = body.as_linear_image();
      params["transform"] = rows_from_mat(b.transform);
      params["inner"] = body_to_json(*b.inner);
      break;
    }
    case BodyKind::oracle:
      throw error(errc::invalid_input, "oracle bodies have no file form");
  }
  j["parameters"] = params;
  j["sandwich_r"] = body.sandwich_r();
  j["sandwich_R"] = body.sandwich_R();
  return j;
}

Body body_from_json(const Json& j) {
  if (!j.contains("kind") || !j["kind"].is_string())
    throw error(errc::parse_error, "body: missing string field 'kind'");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw error(errc::parse_error, "body: missing integer field 'dim'");
  const std::string kind = j["kind"].get<std::string>();
  const int dim = j["dim"].get<int>();
  const Json params = j.value("parameters", Json::object());

  Body body = [&]() -> Body {
    if (kind == "lp_ball") {
      if (!params.contains("p"))
        throw error(errc::parse_error, "lp_ball: missing parameter 'p'");
      return Body::lp_ball(dim, parse_p(params["p"]), params.value("radius", 1.0));
    }
    if (kind == "sym_polytope") {
      if (!params.contains("rows"))
        throw error(errc::parse_error, "sym_polytope: missing parameter 'rows'");
      Mat rows = mat_from_rows(params["rows"], "sym_polytope rows");
      if (rows.cols() != dim)
        throw error(errc::parse_error, "sym_polytope: row length differs from dim");
      return Body::sym_polytope(std::move(rows));
    }
    if (kind == "ellipsoid") {
      if (!params.contains("shape"))
        throw error(errc::parse_error, "ellipsoid: missing parameter 'shape'");
      Mat shape = mat_from_rows(params["shape"], "ellipsoid shape");
      if (shape.rows() != dim)
        throw error(errc::parse_error, "ellipsoid: shape size differs from dim");
      return Body::ellipsoid_body(std::move(shape));
    }
    if (kind == "linear_image") {
      if (!params.contains("transform") || !params.contains("inner"))
        throw error(errc::parse_error, "linear_image: needs 'transform' and 'inner'");
      Mat t = mat_from_rows(params["transform"], "linear_image transform");
      return Body::linear_image(std::move(t), body_from_json(params["inner"]));
    }
    throw error(errc::parse_error, "body: unknown kind '" + kind + "'");
  }();

  if (j.contains("sandwich_r") || j.contains("sandwich_R")) {
    if (!(j.contains("sandwich_r") && j.contains("sandwich_R")))
      throw error(errc::parse_error, "body: sandwich radii must be given together");
    body = body.with_sandwich(j["sandwich_r"].get<double>(), j["sandwich_R"].get<double>());
  }
  return body;
}

Json lattice_to_json(const LatticeBasis& basis) {
  Json j;
  j["dim"] = basis.dim();
  // stored column-by-column; transpose of the row-major matrix convention
  Json cols = Json::array();
  for (int c = 0; c < basis.dim(); ++c) {
    Json col = Json::array();
    for (int r = 0; r < basis.dim(); ++r) col.push_back(basis.columns(r, c));
    cols.push_back(col);
  }
  j["columns"] = cols;
  return j;
}

LatticeBasis lattice_from_json(const Json& j) {
  if (!j.contains("dim") || !j.contains("columns"))
    throw error(errc::parse_error, "lattice: needs 'dim' and 'columns'");
  const int dim = j["dim"].get<int>();
  Mat cols_as_rows = mat_from_rows(j["columns"], "lattice columns");
  if (cols_as_rows.rows() != dim || cols_as_rows.cols() != dim)
    throw error(errc::parse_error, "lattice: expected dim x dim columns");
  return LatticeBasis::from_columns(cols_as_rows.transpose());
}

Json ellipsoid_to_json(const Ellipsoid& e) {
  Json j;
  j["dim"] = e.dim();
  j["shape"] = rows_from_mat(e.shape);
  j["radius"] = e.radius;
  return j;
}

Ellipsoid ellipsoid_from_json(const Json& j) {
  if (!j.contains("shape") || !j.contains("radius"))
    throw error(errc::parse_error, "ellipsoid: needs 'shape' and 'radius'");
  Mat shape = mat_from_rows(j["shape"], "ellipsoid shape");
  if (j.contains("dim") && j["dim"].get<int>() != shape.rows())
    throw error(errc::parse_error, "ellipsoid: dim disagrees with shape");
  if ((shape - shape.transpose()).cwiseAbs().maxCoeff() >
      1e-9 * std::max(1.0, shape.cwiseAbs().maxCoeff()))
    throw error(errc::parse_error, "ellipsoid: shape must be symmetric");
  const double radius = j["radius"].get<double>();
  if (!(radius > 0.0)) throw error(errc::parse_error, "ellipsoid: radius must be positive");
  return Ellipsoid{std::move(shape), radius};
}

Json matrix_to_json(const Mat& m) {
  Json j;
  j["dim"] = static_cast<int>(m.rows());
  j["entries"] = rows_from_mat(m);
  return j;
}

Mat matrix_from_json(const Json& j) {
  if (j.is_array()) return mat_from_rows(j, "matrix");
  if (!j.contains("entries")) throw error(errc::parse_error, "matrix: needs 'entries'");
  Mat m = mat_from_rows(j["entries"], "matrix entries");
  if (j.contains("dim") && j["dim"].get<int>() != m.rows())
    throw error(errc::parse_error, "matrix: dim disagrees with entries");
  return m;
}

Json vector_to_json(const Vec& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vec vector_from_json(const Json& j) {
  if (!j.is_array()) throw error(errc::parse_error, "vector: expected an array");
  Vec v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw error(errc::parse_error, "vector: entries must be numbers");
    v[static_cast<int>(i)] = j[i].get<double>();
  }
  return v;
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw error(errc::parse_error, origin + ": " + e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::parse_error, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

}  // namespace mellip
