#pragma once

#include <json.hpp>
#include <string>

#include "mellip/body.hpp"
#include "mellip/ellipsoid.hpp"
#include "mellip/lattice.hpp"

namespace mellip {

using Json = nlohmann::ordered_json;

// File schemas (documented in the README):
//   body:      {kind, dim, parameters{...}, sandwich_r?, sandwich_R?}
//   lattice:   {dim, columns: [[...], ...]}
//   ellipsoid: {dim, shape: [[...], ...], radius}
//   matrix:    {dim, entries: [[...], ...]}
// Matrices are row-major arrays of arrays of decimal numbers. Unknown body
// kinds are rejected; oracle bodies have no file form.

Json body_to_json(const Body& body);
Body body_from_json(const Json& j);

Json lattice_to_json(const LatticeBasis& basis);
LatticeBasis lattice_from_json(const Json& j);

Json ellipsoid_to_json(const Ellipsoid& e);
Ellipsoid ellipsoid_from_json(const Json& j);

Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);

Json vector_to_json(const Vec& v);
Vec vector_from_json(const Json& j);

// Parse with location diagnostics mapped onto errc::parse_error.
Json parse_json_text(const std::string& text, const std::string& origin);
Json load_json_file(const std::string& path);

}  // namespace mellip
