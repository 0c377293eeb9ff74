#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mellip/numeric.hpp"

namespace mellip {

using VecI = Eigen::VectorXi;

enum class GridMode {
  cell_cover,  // (1/s)Z^n meeting the cell-padded ball C_s + 2*sqrt(n)*B2
  ball3_set,   // (1/s)Z^n inside the ball 3*sqrt(n)*B2
};

std::string to_string(GridMode mode);

// s = (1/sqrt(2*pi)) * sqrt(ln(2(2n+1)) / pi)
double grid_sigma(int dim);

struct GridParams {
  int dim;
  double s;
  GridMode mode;

  static GridParams make(int dim, GridMode mode = GridMode::cell_cover) {
    return GridParams{dim, grid_sigma(dim), mode};
  }
  // half-width of the cube cell C_s = (1/2s)[-1,1]^n
  double cell_halfwidth() const { return 0.5 / s; }
};

// The discrete point set D in (1/s)Z^n with per-cell Gaussian weights
// p_x = integral of the standard Gaussian density over x + C_s. Points are
// stored as integer coordinates z (grid point x = z/s) in lexicographic
// order; every weighted sum over the grid runs in this fixed order.
class GaussGrid {
 public:
  // BFS from the origin over +-e_i neighbours; dims above `dim_cap` are
  // refused with a size estimate.
  static GaussGrid build(const GridParams& params, int dim_cap = 10);

  const GridParams& params() const { return params_; }
  int dim() const { return params_.dim; }
  std::size_t size() const { return points_.size(); }

  const std::vector<VecI>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

  // Grid point x = z/s as a real vector.
  Eigen::VectorXd point(std::size_t i) const;

  double weight_sum() const;

 private:
  GaussGrid(GridParams params, std::vector<VecI> points, std::vector<double> weights)
      : params_(params), points_(std::move(points)), weights_(std::move(weights)) {}

  GridParams params_;
  std::vector<VecI> points_;
  std::vector<double> weights_;
};

// p_x for grid point z as a product of 1-D normal interval masses; exact
// factorization because the cell is an axis-aligned cube.
double grid_weight(const VecI& z, const GridParams& params);

// exp(-(1 - (1+ln t^2)/t^2) * n t^2 / 2), valid bound on Pr(||X|| >= t*sqrt(n))
// for t >= 1.
double gaussian_tail_bound(int dim, double t);

// Sum of rho_s(z + c) = exp(-pi * ||(z+c)/s||^2) over the integer box
// ||z||_inf <= truncation. Factorizes over coordinates.
double discrete_gaussian_mass(const Eigen::VectorXd& c, double s, int truncation);

}  // namespace mellip
