#pragma once

#include <Eigen/Dense>

#include "mellip/numeric.hpp"

namespace mellip {

// Origin-centered ellipsoid {shape * u : ||u||_2 <= radius}, shape positive
// semidefinite.
struct Ellipsoid {
  Eigen::MatrixXd shape;
  double radius;

  int dim() const { return static_cast<int>(shape.rows()); }
  double volume() const;

  Ellipsoid scaled(double factor) const { return {shape, radius * factor}; }
};

// Volume of the n-dimensional Euclidean unit ball.
double unit_ball_volume(int dim);

}  // namespace mellip
