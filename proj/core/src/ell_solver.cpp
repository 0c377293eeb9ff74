#include "mellip/ell_solver.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace mellip {

namespace {

constexpr double kPi = 3.14159265358979323846;

using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// Isometry between symmetric matrices under <.,.>_F and R^{n(n+1)/2}:
// diagonal entries first, then upper off-diagonals scaled by sqrt(2).
Vec sym_to_vec(const Mat& A) {
  const int n = static_cast<int>(A.rows());
  Vec v(n * (n + 1) / 2);
  for (int i = 0; i < n; ++i) v[i] = A(i, i);
  int k = n;
  const double s2 = std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) v[k++] = A(i, j) * s2;
  return v;
}

Mat vec_to_sym(const Vec& v, int n) {
  Mat A(n, n);
  for (int i = 0; i < n; ++i) A(i, i) = v[i];
  int k = n;
  const double inv_s2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      A(i, j) = A(j, i) = v[k++] * inv_s2;
    }
  return A;
}

}  // namespace

std::string to_string(SolveStatus status) {
  return status == SolveStatus::optimal_within_eps ? "optimal_within_eps"
                                                   : "iteration_limit";
}

double unit_ball_volume(int dim) {
  return std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

double Ellipsoid::volume() const {
  return std::pow(radius, dim()) * std::abs(shape.determinant()) *
         unit_ball_volume(dim());
}

ObjectiveBounds objective_bounds(const GaussGrid& grid) {
  const int n = grid.dim();
  const double nd = static_cast<double>(n);
  const double s = grid.params().s;
  Mat second_moment = Mat::Zero(n, n);
  KahanSum l2;
  double rho_max = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec x = grid.point(i);
    const double w = grid.weights()[i];
    second_moment += w * x * x.transpose();
    l2.add(w * x.norm());
    rho_max = std::max(rho_max, x.norm());
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(second_moment, Eigen::EigenvaluesOnly);
  const double grid_lower = es.eigenvalues()(0) / (nd * rho_max);
  // the analytic constant is only meaningful once s > 1 (very large n)
  const double analytic_lower =
      0.5 * std::sqrt(2.0 / kPi) * (1.0 - 1.0 / s) / std::sqrt(nd);
  const double upper = std::min(3.0 * nd * nd, 2.0 * std::pow(nd, 1.5) * l2.value());
  return {std::max(grid_lower, analytic_lower), upper};
}

SolveResult solve_ell_program(const Body& body, const GaussGrid& grid,
                              const SolverConfig& cfg) {
  if (!(cfg.epsilon > 0.0) || cfg.epsilon > 1.0)
    throw error(errc::invalid_input, "solver epsilon must lie in (0,1]");
  if (body.dim() != grid.dim())
    throw error(errc::invalid_input, "solver: body and grid dimensions differ");
  const double nd = static_cast<double>(body.dim());
  if (body.sandwich_r() < 1.0 - 1e-9 || body.sandwich_R() > nd * (1.0 + 1e-9))
    throw error(errc::precondition_violated,
                "solver requires a normalized body (B2 <= K <= n*B2)");

  const int n = body.dim();
  if (n == 1) {
    // f_tilde(a) = a * l_tilde for scalar a >= 1; the minimum is at a = 1
    const double value = l_tilde(body, grid);
    return {ShapeMatrix::identity(1), value, 0, 0.0, SolveStatus::optimal_within_eps};
  }

  const int d = n * (n + 1) / 2;
  const double dd = static_cast<double>(d);
  const double op_cap = 2.0 * std::pow(nd, 1.5);
  const double outer_radius = 3.0 * nd * nd;        // region sandwich, outer
  const double inner_radius = std::pow(nd, 1.5) - 1.0;  // and inner

  const ObjectiveBounds bounds = objective_bounds(grid);
  if (!(bounds.lower > 0.0) || bounds.upper <= bounds.lower)
    throw error(errc::precondition_violated, "degenerate objective bounds");
  const double value_span = (bounds.upper - bounds.lower) / bounds.lower;
  const double alpha0 = outer_radius / inner_radius;

  // certified multiplicative gap after k cuts
  auto gap_at = [&](int k) {
    return alpha0 * std::exp(-static_cast<double>(k) / (2.0 * dd * dd)) * value_span;
  };

  VecL center = sym_to_vec(std::pow(nd, 1.5) * Mat::Identity(n, n)).cast<long double>();
  // The localization ellipsoid is kept in factored form P = L L^T: quadratic
  // forms a^T P a = ||L^T a||^2 stay nonnegative under heavy anisotropy,
  // where the full matrix loses them to cancellation. Extended precision
  // postpones the width floor hit when the optimum sits on the det = 1
  // boundary and consecutive cuts pin one direction.
  MatL L = MatL::Identity(d, d) * static_cast<long double>(outer_radius);
  const long double gamma = std::sqrt(dd * dd / (dd * dd - 1.0));
  const long double shrink = 1.0 - std::sqrt(1.0 - 2.0 / (dd + 1.0));

  // n^{3/2} I is always feasible; seed the incumbent there
  Mat best_A = std::pow(nd, 1.5) * Mat::Identity(n, n);
  double best_value = f_tilde(body, grid, best_A);

  int k = 0;
  while (gap_at(k) > cfg.epsilon && k < cfg.max_iterations) {
    const Mat A = vec_to_sym(center.cast<double>(), n);
    Eigen::SelfAdjointEigenSolver<Mat> es(A);
    const Vec evals = es.eigenvalues();

    Mat cut;
    if (evals(0) < 0.0) {
      const Vec v = es.eigenvectors().col(0);
      cut = -v * v.transpose();
    } else {
      double logdet = 0.0;
      for (int i = 0; i < n; ++i) logdet += std::log(std::max(evals(i), 1e-300));
      if (logdet < 0.0) {
        // gradient of -ln det at the PSD-projected spectrum
        Vec inv_evals(n);
        for (int i = 0; i < n; ++i) inv_evals[i] = 1.0 / std::max(evals(i), 1e-12);
        cut = -(es.eigenvectors() * inv_evals.asDiagonal() *
                es.eigenvectors().transpose());
      } else if (evals(n - 1) > op_cap) {
        const Vec u = es.eigenvectors().col(n - 1);
        cut = u * u.transpose();
      } else {
        const double value = f_tilde(body, grid, A);
        if (value < best_value) {
          best_value = value;
          best_A = A;
        }
        const Mat G = f_tilde_subgradient(body, grid, A);
        cut = 0.5 * (G + G.transpose());
      }
    }

    const VecL a = sym_to_vec(cut).cast<long double>();
    const VecL w = L.transpose() * a;
    const long double norm2 = w.squaredNorm();
    if (!(norm2 > 0.0L)) break;  // direction width below representable range
    const long double norm = std::sqrt(norm2);
    center -= (L * w) / ((static_cast<long double>(dd) + 1.0L) * norm);
    L = gamma * (L - (shrink / norm2) * (L * w) * w.transpose());
    ++k;
  }

  const double gap = gap_at(k);
  const SolveStatus status = gap <= cfg.epsilon ? SolveStatus::optimal_within_eps
                                                : SolveStatus::iteration_limit;
  return {ShapeMatrix{best_A}, best_value, k, gap, status};
}

Ellipsoid build_ellipsoid(const ShapeMatrix& A, double value, int dim) {
  if (!(value > 0.0)) throw error(errc::invalid_input, "build_ellipsoid: value must be positive");
  if (A.dim() != dim) throw error(errc::invalid_input, "build_ellipsoid: dimension mismatch");
  return Ellipsoid{A.entries, std::sqrt(static_cast<double>(dim)) / value};
}

}  // namespace mellip
