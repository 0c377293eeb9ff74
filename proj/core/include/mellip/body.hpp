#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <variant>

#include "mellip/numeric.hpp"

namespace mellip {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class BodyKind { lp_ball, sym_polytope, ellipsoid, linear_image, oracle };

std::string to_string(BodyKind kind);

class Body;

// Result of linear rounding: body' = transform * K, B2 <= body' <= n*B2.
struct NormalizedBody;

// A symmetric convex body K with its gauge ||x||_K = min{t >= 0 : x in tK},
// carrying certified Euclidean sandwiching r*B2 <= K <= R*B2. Analytic kinds
// evaluate the gauge in closed form; oracle bodies bisect on membership.
//
// Instances are immutable and cheap to copy; all evaluation is const and
// safe for concurrent use (oracle predicates must be reentrant).
class Body {
 public:
  struct LpBall {
    double p;  // >= 1, infinity() for the max norm
    double radius;
  };
  struct SymPolytope {
    Mat rows;  // m x n, K = {x : |<a_i, x>| <= 1}
  };
  struct EllipsoidBody {
    Mat shape;    // nonsingular M, K = M * B2
    Mat inverse;  // cached M^{-1}
  };
  struct LinearImage {
    Mat transform;  // nonsingular T, K = T * inner
    Mat inverse;    // cached T^{-1}
    std::shared_ptr<const Body> inner;
  };
  struct Oracle {
    std::function<bool(const Vec&)> contains;
    double tolerance;
  };

  static Body lp_ball(int dim, double p, double radius = 1.0);
  static Body sym_polytope(Mat rows);
  static Body ellipsoid_body(Mat shape);
  static Body linear_image(Mat transform, Body inner);
  static Body oracle(int dim, std::function<bool(const Vec&)> contains,
                     double sandwich_r, double sandwich_R, double tolerance = 1e-9);

  // Override the computed sandwiching with caller-certified radii.
  Body with_sandwich(double r, double R) const;

  BodyKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double sandwich_r() const { return sandwich_r_; }
  double sandwich_R() const { return sandwich_R_; }

  // Gauge functional ||x||_K. Zero vector maps to 0.
  double norm(const Vec& x) const;

  // A supporting functional g with <g,x> = ||x||_K and <g,y> <= ||y||_K.
  // Closed forms for analytic kinds; central differences for oracles
  // (degraded tolerance ~1e-4). Returns 0 at x = 0.
  Vec subgradient(const Vec& x) const;

  // true iff ||x||_K <= 1 (within the oracle tolerance for oracle bodies).
  bool contains(const Vec& x) const;

  // Linear rounding: returns (body', T) with body' = T*K sandwiched as
  // B2 <= body' <= n*B2. Pure scaling when R/r <= n; an inscribed-ellipsoid
  // transform for polytopes otherwise. Oracle bodies with R/r > n are
  // rejected.
  NormalizedBody normalize() const;

  const LpBall& as_lp_ball() const { return std::get<LpBall>(data_); }
  const SymPolytope& as_sym_polytope() const { return std::get<SymPolytope>(data_); }
  const EllipsoidBody& as_ellipsoid() const { return std::get<EllipsoidBody>(data_); }
  const LinearImage& as_linear_image() const { return std::get<LinearImage>(data_); }

 private:
  using Data = std::variant<LpBall, SymPolytope, EllipsoidBody, LinearImage, Oracle>;

  Body(BodyKind kind, int dim, Data data, double r, double R);

  BodyKind kind_;
  int dim_;
  Data data_;
  double sandwich_r_;
  double sandwich_R_;
};

struct NormalizedBody {
  Body body;
  Mat transform;
};

// Maximum-volume origin-centered ellipsoid M*B2 inscribed in the symmetric
// polytope {x : |<a_i,x>| <= 1}, via Khachiyan's barycentric ascent on the
// polar point set. Returns M (symmetric positive definite) with
// M*B2 <= K <= sqrt(n)*(1+tol)*M*B2.
Mat inscribed_ellipsoid(const Mat& rows, double tolerance = 1e-9, int max_iterations = 100000);

}  // namespace mellip
