#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mellip/body.hpp"
#include "mellip/ellipsoid.hpp"

namespace mellip {

enum class VolumeMethod {
  grid_2d_3d,  // regular midpoint grid over the bounding box (dim <= 4)
  quasi_mc,    // fixed Halton sequence, deterministic
};

std::string to_string(VolumeMethod method);

// Empirical covering-number bounds 3^n vol(A) / vol(A cap B) for the pair
// (body K, ellipsoid E). vol(E) is exact from the determinant; the other two
// volumes are deterministic estimates.
struct CoveringReport {
  double vol_E;
  double vol_K_est;
  double vol_intersection_est;
  double bound_N_K_E;
  double bound_N_E_K;
  VolumeMethod method;
  std::int64_t points_used;
};

CoveringReport volume_ratio_diag(const Body& body, const Ellipsoid& E,
                                 VolumeMethod method, std::int64_t resolution);

// Largest r such that vol(r E' cap K) >= vol(r E')/2, where E' is the
// unit-radius version of the given ellipsoid. The volume fraction is
// non-increasing in r, so bisection applies. `saturated` is set when the
// fraction stayed >= 1/2 across the whole bracket.
struct HalfVolumeResult {
  double radius;
  bool saturated;
};

HalfVolumeResult half_volume_radius(const Body& body, const Ellipsoid& direction,
                                    std::int64_t resolution);

// Centers c such that translates E + c cover outer_radius * B2. Centers lie
// on the lattice spanned by the scaled principal axes of E (spacing
// radius/sqrt(n) per axis); the matching inscribed-box tiling guarantees
// coverage. Throws when the count would exceed `cap`.
std::vector<Vec> covering_translates(const Ellipsoid& E, double outer_radius,
                                     std::int64_t cap = 10'000'000);

}  // namespace mellip
