#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "mellip/body.hpp"
#include "mellip/gauss_grid.hpp"

namespace mellip {

// Candidate / solution matrix of the ellipsoid program. Solver-facing
// instances are symmetric; feasible ones additionally have lambda_min >= -tol
// and det >= 1 - tol.
struct ShapeMatrix {
  Mat entries;

  int dim() const { return static_cast<int>(entries.rows()); }
  double determinant() const { return entries.determinant(); }
  double operator_norm() const;
  double frobenius_norm() const { return entries.norm(); }
  bool is_symmetric(double tol = 1e-12) const;

  static ShapeMatrix identity(int n) { return ShapeMatrix{Mat::Identity(n, n)}; }
};

// Discrete ell-estimate of the body: sum of p_x * ||x||_K over the grid,
// compensated summation in the grid's fixed order.
double l_tilde(const Body& body, const GaussGrid& grid);

// Discretized program objective: sum of p_x * ||A x||_K.
double f_tilde(const Body& body, const GaussGrid& grid, const Mat& A);

// Matrix subgradient G = sum of p_x * g_x * x^T with g_x a gauge subgradient
// at A x; satisfies f_tilde(B) >= f_tilde(A) + <G, B - A>_F.
Mat f_tilde_subgradient(const Body& body, const GaussGrid& grid, const Mat& A);

struct McEstimate {
  double mean;
  double std_error;
};

// Seeded Monte-Carlo estimate of E ||A X||_K over standard Gaussian X.
// Counter-based generator: reproducible bit-for-bit for a given seed.
// Verification oracle only; no solver path depends on it.
McEstimate mc_f_estimate(const Body& body, const Mat& A, std::int64_t samples,
                         std::uint64_t seed);

struct UniformGaussianCheck {
  double lhs;  // estimate of E ||U||_K, U uniform on [-1/2,1/2]^n
  double rhs;  // estimate of (1/sqrt(2 pi)) E ||X||_K
  double lhs_std_error;
  double rhs_std_error;
};

UniformGaussianCheck uniform_vs_gaussian_check(const Body& body, std::int64_t samples,
                                               std::uint64_t seed);

}  // namespace mellip
