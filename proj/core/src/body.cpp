#include "mellip/body.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <utility>

namespace mellip {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lp_norm(const Vec& x, double p) {
  if (std::isinf(p)) return x.lpNorm<Eigen::Infinity>();
  if (p == 1.0) return x.lpNorm<1>();
  if (p == 2.0) return x.norm();
  double acc = 0.0;
  for (int i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x[i]), p);
  return std::pow(acc, 1.0 / p);
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

std::string to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::lp_ball: return "lp_ball";
    case BodyKind::sym_polytope: return "sym_polytope";
    case BodyKind::ellipsoid: return "ellipsoid";
    case BodyKind::linear_image: return "linear_image";
    case BodyKind::oracle: return "oracle";
  }
  return "unknown";
}

Body::Body(BodyKind kind, int dim, Data data, double r, double R)
    : kind_(kind), dim_(dim), data_(std::move(data)), sandwich_r_(r), sandwich_R_(R) {
  if (dim_ < 1) throw error(errc::invalid_input, "body dimension must be positive");
  if (!(sandwich_r_ > 0.0) || !(sandwich_r_ <= sandwich_R_))
    throw error(errc::invalid_input, "body requires 0 < sandwich_r <= sandwich_R");
}

Body Body::lp_ball(int dim, double p, double radius) {
  if (!(p >= 1.0)) throw error(errc::invalid_input, "lp_ball requires p >= 1");
  if (!(radius > 0.0)) throw error(errc::invalid_input, "lp_ball requires radius > 0");
  // ||x||_p <= ||x||_2 <= n^{1/2-1/p} ||x||_p for p >= 2, reversed for p <= 2.
  double r, R;
  const double n = static_cast<double>(dim);
  if (p >= 2.0) {
    r = radius;
    R = radius * std::pow(n, 0.5 - (std::isinf(p) ? 0.0 : 1.0 / p));
  } else {
    r = radius * std::pow(n, 0.5 - 1.0 / p);  // exponent <= 0
    R = radius;
  }
  return Body(BodyKind::lp_ball, dim, LpBall{p, radius}, r, R);
}

Body Body::sym_polytope(Mat rows) {
  if (rows.rows() < 1) throw error(errc::invalid_input, "sym_polytope needs at least one row");
  const int dim = static_cast<int>(rows.cols());
  Eigen::JacobiSVD<Mat> svd(rows);
  const double smin = svd.singularValues().tail(1)(0);
  if (!(smin > 1e-12 * svd.singularValues()(0)) || rows.rows() < dim)
    throw error(errc::invalid_input, "sym_polytope rows must span R^n (body would be unbounded)");
  // max_i |<a_i,x>| >= ||Ax||_2/sqrt(m) >= smin ||x||/sqrt(m); <= max||a_i|| ||x||.
  double max_row = 0.0;
  for (int i = 0; i < rows.rows(); ++i) max_row = std::max(max_row, rows.row(i).norm());
  const double r = 1.0 / max_row;
  const double R = std::sqrt(static_cast<double>(rows.rows())) / smin;
  return Body(BodyKind::sym_polytope, dim, SymPolytope{std::move(rows)}, r, R);
}

Body Body::ellipsoid_body(Mat shape) {
  if (shape.rows() != shape.cols())
    throw error(errc::invalid_input, "ellipsoid shape must be square");
  const int dim = static_cast<int>(shape.rows());
  Eigen::JacobiSVD<Mat> svd(shape, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(dim - 1);
  if (!(smin > 1e-14 * smax))
    throw error(errc::invalid_input, "ellipsoid shape must be nonsingular");
  Mat inv = svd.solve(Mat::Identity(dim, dim));
  return Body(BodyKind::ellipsoid, dim, EllipsoidBody{std::move(shape), std::move(inv)},
              smin, smax);
}

Body Body::linear_image(Mat transform, Body inner) {
  if (transform.rows() != transform.cols() || transform.rows() != inner.dim())
    throw error(errc::invalid_input, "linear_image transform must be n x n");
  Eigen::JacobiSVD<Mat> svd(transform, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int dim = inner.dim();
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(dim - 1);
  if (!(smin > 1e-14 * smax))
    throw error(errc::invalid_input, "linear_image transform must be nonsingular");
  Mat inv = svd.solve(Mat::Identity(dim, dim));
  const double r = smin * inner.sandwich_r();
  const double R = smax * inner.sandwich_R();
  auto holder = std::make_shared<const Body>(std::move(inner));
  return Body(BodyKind::linear_image, dim,
              LinearImage{std::move(transform), std::move(inv), std::move(holder)}, r, R);
}

Body Body::oracle(int dim, std::function<bool(const Vec&)> contains, double sandwich_r,
                  double sandwich_R, double tolerance) {
  if (!(tolerance > 0.0)) throw error(errc::invalid_input, "oracle tolerance must be positive");
  return Body(BodyKind::oracle, dim, Oracle{std::move(contains), tolerance},
              sandwich_r, sandwich_R);
}

Body Body::with_sandwich(double r, double R) const {
  Body b = *this;
  if (!(r > 0.0) || !(r <= R))
    throw error(errc::invalid_input, "with_sandwich requires 0 < r <= R");
  b.sandwich_r_ = r;
  b.sandwich_R_ = R;
  return b;
}

double Body::norm(const Vec& x) const {
  if (x.size() != dim_) throw error(errc::invalid_input, "norm: dimension mismatch");
  switch (kind_) {
    case BodyKind::lp_ball: {
      const auto& b = std::get<LpBall>(data_);
      return lp_norm(x, b.p) / b.radius;
    }
    case BodyKind::sym_polytope: {
      const auto& b = std::get<SymPolytope>(data_);
      return (b.rows * x).cwiseAbs().maxCoeff();
    }
    case BodyKind::ellipsoid: {
      const auto& b = std::get<EllipsoidBody>(data_);
      return (b.inverse * x).norm();
    }
    case BodyKind::linear_image: {
      const auto& b = std::get<LinearImage>(data_);
      return b.inner->norm(b.inverse * x);
    }
    case BodyKind::oracle: {
      const auto& b = std::get<Oracle>(data_);
      const double x2 = x.norm();
      if (x2 == 0.0) return 0.0;
      double lo = x2 / sandwich_R_;
      double hi = x2 / sandwich_r_;
      if (!b.contains(x / hi))
        throw error(errc::oracle_inconsistency,
                    "oracle membership fails inside the certified outer radius");
      if (b.contains(x / lo)) return lo;  // kisses the sandwich bound
      // invariant: x/hi in K, x/lo not in K
      while (hi - lo > 1e-9 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (b.contains(x / mid))
          hi = mid;
        else
          lo = mid;
      }
      return hi;
    }
  }
  throw error(errc::invalid_input, "norm: bad body kind");
}

Vec Body::subgradient(const Vec& x) const {
  if (x.size() != dim_) throw error(errc::invalid_input, "subgradient: dimension mismatch");
  if (x.isZero(0.0)) return Vec::Zero(dim_);
  switch (kind_) {
    case BodyKind::lp_ball: {
      const auto& b = std::get<LpBall>(data_);
      Vec g(dim_);
      if (std::isinf(b.p)) {
        // first maximizing coordinate, for determinism
        int imax = 0;
        double best = -1.0;
        for (int i = 0; i < dim_; ++i) {
          if (std::abs(x[i]) > best) {
            best = std::abs(x[i]);
            imax = i;
          }
        }
        g.setZero();
        g[imax] = sign_of(x[imax]);
      } else if (b.p == 1.0) {
        for (int i = 0; i < dim_; ++i) g[i] = sign_of(x[i]);
      } else {
        const double nx = lp_norm(x, b.p);
        for (int i = 0; i < dim_; ++i)
          g[i] = sign_of(x[i]) * std::pow(std::abs(x[i]) / nx, b.p - 1.0);
      }
      return g / b.radius;
    }
    case BodyKind::sym_polytope: {
      const auto& b = std::get<SymPolytope>(data_);
      Vec vals = b.rows * x;
      int imax = 0;
      double best = -1.0;
      for (int i = 0; i < vals.size(); ++i) {
        if (std::abs(vals[i]) > best) {
          best = std::abs(vals[i]);
          imax = i;
        }
      }
      return static_cast<double>(sign_of(vals[imax])) * b.rows.row(imax).transpose();
    }
    case BodyKind::ellipsoid: {
      const auto& b = std::get<EllipsoidBody>(data_);
      Vec y = b.inverse * x;
      const double ny = y.norm();
      return b.inverse.transpose() * (y / ny);
    }
    case BodyKind::linear_image: {
      const auto& b = std::get<LinearImage>(data_);
      return b.inverse.transpose() * b.inner->subgradient(b.inverse * x);
    }
    case BodyKind::oracle: {
      const double h = 1e-6 * std::max(1.0, x.norm());
      Vec g(dim_);
      Vec xp = x, xm = x;
      for (int i = 0; i < dim_; ++i) {
        xp[i] = x[i] + h;
        xm[i] = x[i] - h;
        g[i] = (norm(xp) - norm(xm)) / (2.0 * h);
        xp[i] = x[i];
        xm[i] = x[i];
      }
      return g;
    }
  }
  throw error(errc::invalid_input, "subgradient: bad body kind");
}

bool Body::contains(const Vec& x) const {
  if (kind_ == BodyKind::oracle) return std::get<Oracle>(data_).contains(x);
  return norm(x) <= 1.0;
}

NormalizedBody Body::normalize() const {
  const double ratio = sandwich_R_ / sandwich_r_;
  const double n = static_cast<double>(dim_);
  if (ratio <= n) {
    // pure scaling by 1/r
    const double c = 1.0 / sandwich_r_;
    Mat T = c * Mat::Identity(dim_, dim_);
    switch (kind_) {
      case BodyKind::lp_ball: {
        auto b = std::get<LpBall>(data_);
        Body scaled = lp_ball(dim_, b.p, b.radius * c);
        return {scaled.with_sandwich(1.0, ratio), T};
      }
      case BodyKind::sym_polytope: {
        auto b = std::get<SymPolytope>(data_);
        // (cK) has facet normals a_i / c
        Body scaled = sym_polytope(b.rows / c);
        return {scaled.with_sandwich(1.0, ratio), T};
      }
      case BodyKind::ellipsoid: {
        auto b = std::get<EllipsoidBody>(data_);
        Body scaled = ellipsoid_body(b.shape * c);
        return {scaled.with_sandwich(1.0, ratio), T};
      }
      default: {
        Body scaled = linear_image(T, *this).with_sandwich(1.0, ratio);
        return {scaled, T};
      }
    }
  }
  if (kind_ == BodyKind::sym_polytope) {
    const auto& b = std::get<SymPolytope>(data_);
    const double tol = 1e-9;
    Mat M = inscribed_ellipsoid(b.rows, tol);
    Mat Minv = M.llt().solve(Mat::Identity(dim_, dim_));
    // M*B2 <= K, so B2 <= M^{-1}K <= sqrt(n(1+tol))*B2 by symmetric John
    Body rounded = sym_polytope(b.rows * M).with_sandwich(
        1.0, std::sqrt(n) * (1.0 + 16.0 * tol));
    return {rounded, Minv};
  }
  if (kind_ == BodyKind::ellipsoid) {
    const auto& b = std::get<EllipsoidBody>(data_);
    Body ball = lp_ball(dim_, 2.0, 1.0);
    return {ball, b.inverse};
  }
  if (kind_ == BodyKind::linear_image) {
    // T_img^{-1} maps K back onto the inner body, then round that
    const auto& b = std::get<LinearImage>(data_);
    NormalizedBody inner = b.inner->normalize();
    return {inner.body, inner.transform * b.inverse};
  }
  throw error(errc::unsupported_rounding,
              "oracle body with R/r > n requires caller-side rounding");
}

Mat inscribed_ellipsoid(const Mat& rows, double tolerance, int max_iterations) {
  // D-optimal design over the symmetric point set {+-a_i} by Khachiyan
  // ascent with Wolfe-Atwood away steps (plain multiplicative updates crawl
  // near the optimum). The minimum-volume enclosing ellipsoid of the point
  // set is {x : x^T (kappa V)^{-1} x <= 1}; its polar is inscribed in the
  // polytope.
  const int m = static_cast<int>(rows.rows());
  const int n = static_cast<int>(rows.cols());
  Vec u = Vec::Constant(m, 1.0 / m);
  const double nd = static_cast<double>(n);
  for (int it = 0; it < max_iterations; ++it) {
    Mat V = Mat::Zero(n, n);
    for (int i = 0; i < m; ++i) V += u[i] * rows.row(i).transpose() * rows.row(i);
    Mat Vinv = V.ldlt().solve(Mat::Identity(n, n));
    int jmax = 0, jmin = -1;
    double kappa_max = -1.0, kappa_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double k = rows.row(i) * Vinv * rows.row(i).transpose();
      if (k > kappa_max) {
        kappa_max = k;
        jmax = i;
      }
      if (u[i] > 0.0 && k < kappa_min) {
        kappa_min = k;
        jmin = i;
      }
    }
    if (kappa_max <= nd * (1.0 + tolerance)) {
      // enclosure of the points is certified by kappa_max itself; V^{1/2} B2
      // lies inside conv{+-a_i}, which bounds the outer factor by sqrt(kappa)
      Eigen::SelfAdjointEigenSolver<Mat> es(std::max(kappa_max, nd) * V);
      return es.operatorInverseSqrt();
    }
    const double gain_add = kappa_max / nd - 1.0;
    const double gain_away = 1.0 - kappa_min / nd;
    if (gain_add >= gain_away || jmin < 0) {
      const double beta = (kappa_max - nd) / (nd * (kappa_max - 1.0));
      u *= (1.0 - beta);
      u[jmax] += beta;
    } else {
      // decrease the weight of the worst supported point, capped at dropping
      // it entirely; below kappa = 1 the objective keeps improving all the
      // way to the cap
      const double cap = u[jmin] / (1.0 - u[jmin]);
      double beta = cap;
      if (kappa_min > 1.0 + 1e-12)
        beta = std::min((nd - kappa_min) / (nd * (kappa_min - 1.0)), cap);
      u *= (1.0 + beta);
      u[jmin] = std::max(u[jmin] - beta, 0.0);
    }
  }
  throw error(errc::precondition_violated, "inscribed_ellipsoid failed to converge");
}

}  // namespace mellip
