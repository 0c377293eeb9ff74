#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mellip/body.hpp"
#include "mellip/ell_solver.hpp"
#include "mellip/lattice.hpp"

namespace mellip {

struct SvpCaps {
  std::int64_t node_cap = 100'000'000;
  std::int64_t translate_cap = 10'000'000;
};

struct SvpConfig {
  // quality of the internal ellipsoid program solve; a 2-approximation is
  // all the covering argument needs, so the default favors speed
  double solver_epsilon = 1.0;
  int solver_max_iterations = 200000;
  GridMode grid_mode = GridMode::cell_cover;
  bool fallback_ball = false;  // single-ball enumeration instead of translates
  SvpCaps caps;
  // covering ellipsoid for the normalized body, when the caller already
  // solved the program (e.g. many lattices against one body)
  std::optional<Ellipsoid> precomputed_ellipsoid;
};

struct SvpResult {
  Vec vector;
  VecZ coefficients;      // with respect to the input basis
  double norm_value;      // ||vector||_K, the contractual output
  double scale_used;      // final accepted scaling s
  std::int64_t translates_enumerated;
  std::int64_t points_examined;
  bool used_fallback;
};

struct EnumerateBodyStats {
  std::int64_t translates = 0;
  std::int64_t points = 0;
};

// All lattice points v with ||v||_K <= s, exactly: translates of s*E
// covering s*sandwich_R*B2 are enumerated in l2 and the union is filtered by
// the gauge (inclusive slack 1e-12). `fallback_ball` replaces the covering
// by one enumeration of the sandwich ball; results are identical, only the
// work differs. Coefficients are returned sorted lexicographically.
std::vector<VecZ> enumerate_in_body(const LatticeBasis& basis, const Body& body,
                                    double s, const Ellipsoid& E,
                                    const SvpCaps& caps = {},
                                    bool fallback_ball = false,
                                    EnumerateBodyStats* stats = nullptr);

// Exact shortest nonzero lattice vector under the body's gauge:
// normalize the body, bracket the optimum through the Euclidean shortest
// vector, solve the ellipsoid program once, then double the scaling until
// the enumeration is nonempty. Ties are broken on sign-normalized
// coefficients in colexicographic order.
SvpResult svp(const LatticeBasis& basis, const Body& body, const SvpConfig& cfg = {});

}  // namespace mellip
