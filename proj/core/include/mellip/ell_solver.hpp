#pragma once

#include <string>

#include "mellip/ell_estimate.hpp"
#include "mellip/ellipsoid.hpp"

namespace mellip {

struct SolverConfig {
  double epsilon = 0.1;          // multiplicative optimality target, in (0,1]
  int max_iterations = 200000;
  double feasibility_tol = 1e-9;
  GridMode grid_mode = GridMode::cell_cover;
};

enum class SolveStatus { optimal_within_eps, iteration_limit };

std::string to_string(SolveStatus status);

struct SolveResult {
  ShapeMatrix A_opt;
  double value;          // f_tilde(A_opt)
  int iterations;
  double certified_gap;  // multiplicative gap bound at termination
  SolveStatus status;
};

// Deterministic lower/upper bounds for f_tilde over the feasible region
// {A symmetric, A >= 0, det A >= 1, ||A|| <= 2 n^{3/2}}, for a body
// sandwiched as B2 <= K <= n B2. Derived from the grid alone:
//   lower: any feasible A has a unit eigenvector v with eigenvalue >= 1, so
//          f_tilde(A) >= (1/n) sum p_x |<v, Ax>| >= lambda_min(M2)/(n rho_max)
//          with M2 the weighted second-moment matrix of the grid;
//   upper: f_tilde(A) <= ||A|| * sum p_x ||x||_2 <= 2 n^{3/2} l2_tilde,
// each combined with the analytic counterpart when that is stronger.
struct ObjectiveBounds {
  double lower;
  double upper;
};
ObjectiveBounds objective_bounds(const GaussGrid& grid);

// Minimizes f_tilde over the feasible region with the central-cut ellipsoid
// method on symmetric matrices (dimension n(n+1)/2). Cut priority: PSD
// violation, then det, then operator norm, then objective. Requires the body
// normalized: B2 <= K <= n B2.
SolveResult solve_ell_program(const Body& body, const GaussGrid& grid,
                              const SolverConfig& cfg);

// E = (sqrt(n) / value) * A * B2.
Ellipsoid build_ellipsoid(const ShapeMatrix& A, double value, int dim);

}  // namespace mellip
