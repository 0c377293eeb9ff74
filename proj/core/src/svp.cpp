#include "mellip/svp.hpp"

#include <algorithm>
#include <cmath>

#include "mellip/covering.hpp"

namespace mellip {

std::vector<VecZ> enumerate_in_body(const LatticeBasis& basis, const Body& body,
                                    double s, const Ellipsoid& E, const SvpCaps& caps,
                                    bool fallback_ball, EnumerateBodyStats* stats) {
  const int n = basis.dim();
  if (body.dim() != n || E.dim() != n)
    throw error(errc::invalid_input, "enumerate_in_body: dimension mismatch");
  if (!(s > 0.0)) throw error(errc::invalid_input, "enumerate_in_body: scale must be positive");

  std::vector<VecZ> candidates;
  EnumerateBodyStats local;
  if (fallback_ball) {
    const Ellipsoid ball{Mat::Identity(n, n), s * body.sandwich_R()};
    EnumerationResult en =
        enumerate_in_ellipsoid(basis, Vec::Zero(n), ball, caps.node_cap);
    candidates = en.coefficients;
    local.translates = 1;
    local.points = static_cast<std::int64_t>(en.coefficients.size());
  } else {
    const Ellipsoid scaled = E.scaled(s);
    const std::vector<Vec> centers =
        covering_translates(scaled, s * body.sandwich_R(), caps.translate_cap);
    local.translates = static_cast<std::int64_t>(centers.size());
    const EllipsoidEnumerator enumerator(basis, scaled);
    for (const Vec& c : centers) {
      EnumerationResult en = enumerator.enumerate(c, caps.node_cap);
      local.points += static_cast<std::int64_t>(en.coefficients.size());
      candidates.insert(candidates.end(), en.coefficients.begin(), en.coefficients.end());
    }
    std::sort(candidates.begin(), candidates.end(),
              [n](const VecZ& a, const VecZ& b) {
                for (int i = 0; i < n; ++i)
                  if (a[i] != b[i]) return a[i] < b[i];
                return false;
              });
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  }

  const double cutoff = s * (1.0 + 1e-12);
  std::vector<VecZ> inside;
  inside.reserve(candidates.size());
  for (const VecZ& a : candidates)
    if (body.norm(basis.vector(a)) <= cutoff) inside.push_back(a);
  if (stats) {
    stats->translates += local.translates;
    stats->points += local.points;
  }
  return inside;
}

SvpResult svp(const LatticeBasis& basis, const Body& body, const SvpConfig& cfg) {
  const int n = basis.dim();
  if (body.dim() != n) throw error(errc::invalid_input, "svp: dimension mismatch");

  // work in the normalized position; coefficients are shared between the
  // original and transformed bases, so exact values come from the original
  const NormalizedBody norm_pos = body.normalize();
  const Body& K = norm_pos.body;
  const LatticeBasis working = LatticeBasis::from_columns(norm_pos.transform * basis.columns);

  const ShortestVectorResult euclid = shortest_vector_l2(working, cfg.caps.node_cap);
  const double lambda2 = euclid.norm;
  double s = lambda2 / K.sandwich_R();

  Ellipsoid E{Mat::Identity(n, n), 1.0};
  if (cfg.precomputed_ellipsoid) {
    E = *cfg.precomputed_ellipsoid;
    if (E.dim() != n) throw error(errc::invalid_input, "svp: precomputed ellipsoid dimension");
  } else {
    const GaussGrid grid = GaussGrid::build(GridParams::make(n, cfg.grid_mode));
    SolverConfig solver_cfg;
    solver_cfg.epsilon = cfg.solver_epsilon;
    solver_cfg.max_iterations = cfg.solver_max_iterations;
    solver_cfg.grid_mode = cfg.grid_mode;
    const SolveResult solved = solve_ell_program(K, grid, solver_cfg);
    E = build_ellipsoid(solved.A_opt, solved.value, n);
  }

  EnumerateBodyStats stats;
  std::vector<VecZ> inside;
  double first_nonempty_scale = s;
  for (int round = 0; round < 200; ++round) {
    inside = enumerate_in_body(working, K, s, E, cfg.caps, cfg.fallback_ball, &stats);
    bool nonzero = false;
    for (const VecZ& a : inside)
      if (!a.isZero()) {
        nonzero = true;
        break;
      }
    if (nonzero) {
      first_nonempty_scale = s;
      break;
    }
    s *= 2.0;
    if (round == 199)
      throw error(errc::oracle_inconsistency,
                  "svp: scaling guess never found a lattice point; sandwich radii "
                  "are inconsistent with the lattice");
  }

  bool found = false;
  double best_value = 0.0;
  VecZ best_coeffs;
  for (const VecZ& a : inside) {
    if (a.isZero()) continue;
    const VecZ canon = canonical_sign(a);
    const double value = body.norm(basis.vector(canon));
    if (!found || value < best_value ||
        (value == best_value && tie_break_less(canon, best_coeffs))) {
      found = true;
      best_value = value;
      best_coeffs = canon;
    }
  }
  // a previous (empty) round at s/2 must not contradict the final value
  if (first_nonempty_scale > lambda2 / K.sandwich_R() &&
      best_value <= 0.5 * first_nonempty_scale * (1.0 - 1e-9))
    throw error(errc::oracle_inconsistency,
                "svp: enumeration at half the accepted scale missed the minimizer; "
                "body sandwiching is inconsistent");

  return SvpResult{basis.vector(best_coeffs),
                   best_coeffs,
                   best_value,
                   first_nonempty_scale,
                   stats.translates,
                   stats.points,
                   cfg.fallback_ball};
}

}  // namespace mellip
