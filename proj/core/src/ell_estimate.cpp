#include "mellip/ell_estimate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace mellip {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

void check_dims(const Body& body, const GaussGrid& grid) {
  if (body.dim() != grid.dim())
    throw error(errc::invalid_input, "body and grid dimensions differ");
}

}  // namespace

double ShapeMatrix::operator_norm() const {
  if (is_symmetric()) {
    Eigen::SelfAdjointEigenSolver<Mat> es(entries, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::JacobiSVD<Mat> svd(entries);
  return svd.singularValues()(0);
}

bool ShapeMatrix::is_symmetric(double tol) const {
  return (entries - entries.transpose()).cwiseAbs().maxCoeff() <=
         tol * std::max(1.0, entries.cwiseAbs().maxCoeff());
}

double l_tilde(const Body& body, const GaussGrid& grid) {
  check_dims(body, grid);
  KahanSum acc;
  for (std::size_t i = 0; i < grid.size(); ++i)
    acc.add(grid.weights()[i] * body.norm(grid.point(i)));
  return acc.value();
}

double f_tilde(const Body& body, const GaussGrid& grid, const Mat& A) {
  check_dims(body, grid);
  if (A.rows() != grid.dim() || A.cols() != grid.dim())
    throw error(errc::invalid_input, "f_tilde: matrix dimension mismatch");
  KahanSum acc;
  for (std::size_t i = 0; i < grid.size(); ++i)
    acc.add(grid.weights()[i] * body.norm(A * grid.point(i)));
  return acc.value();
}

Mat f_tilde_subgradient(const Body& body, const GaussGrid& grid, const Mat& A) {
  check_dims(body, grid);
  const int n = grid.dim();
  Mat G = Mat::Zero(n, n);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec x = grid.point(i);
    G += grid.weights()[i] * body.subgradient(A * x) * x.transpose();
  }
  return G;
}

McEstimate mc_f_estimate(const Body& body, const Mat& A, std::int64_t samples,
                         std::uint64_t seed) {
  if (samples < 1000)
    throw error(errc::invalid_input, "mc_f_estimate requires at least 1000 samples");
  const int n = body.dim();
  CounterRng rng(seed);
  KahanSum sum, sumsq;
  Vec x(n);
  for (std::int64_t i = 0; i < samples; ++i) {
    for (int j = 0; j < n; ++j)
      x[j] = rng.normal(static_cast<std::uint64_t>(i) * n + j);
    const double v = body.norm(A * x);
    sum.add(v);
    sumsq.add(v * v);
  }
  const double m = sum.value() / static_cast<double>(samples);
  const double var =
      std::max(0.0, sumsq.value() / static_cast<double>(samples) - m * m);
  return {m, std::sqrt(var / static_cast<double>(samples))};
}

UniformGaussianCheck uniform_vs_gaussian_check(const Body& body, std::int64_t samples,
                                               std::uint64_t seed) {
  if (samples < 1000)
    throw error(errc::invalid_input, "uniform_vs_gaussian_check requires >= 1000 samples");
  const int n = body.dim();
  CounterRng unif_rng(seed ^ 0x75a9e3d1ULL);
  KahanSum lhs_sum, lhs_sq;
  Vec u(n);
  for (std::int64_t i = 0; i < samples; ++i) {
    for (int j = 0; j < n; ++j)
      u[j] = unif_rng.uniform(static_cast<std::uint64_t>(i) * n + j) - 0.5;
    const double v = body.norm(u);
    lhs_sum.add(v);
    lhs_sq.add(v * v);
  }
  McEstimate gauss = mc_f_estimate(body, Mat::Identity(n, n), samples, seed);
  const double ns = static_cast<double>(samples);
  const double lm = lhs_sum.value() / ns;
  const double lvar = std::max(0.0, lhs_sq.value() / ns - lm * lm);
  return {lm, kInvSqrt2Pi * gauss.mean, std::sqrt(lvar / ns),
          kInvSqrt2Pi * gauss.std_error};
}

}  // namespace mellip
