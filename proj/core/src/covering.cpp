#include "mellip/covering.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace mellip {

namespace {

// Deterministic point set used by the fraction estimator: Halton points in
// the cube [-1,1]^n filtered to the unit ball.
std::vector<Vec> halton_ball_points(int dim, std::int64_t target) {
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(target));
  Vec u(dim);
  std::uint64_t index = 1;
  while (static_cast<std::int64_t>(pts.size()) < target) {
    for (int j = 0; j < dim; ++j)
      u[j] = 2.0 * halton(index, halton_base(static_cast<unsigned>(j))) - 1.0;
    ++index;
    if (u.squaredNorm() <= 1.0) pts.push_back(u);
    if (index > static_cast<std::uint64_t>(target) * 1000ULL + 1000000ULL)
      throw error(errc::insufficient_resolution,
                  "halton_ball_points: acceptance rate too low in this dimension");
  }
  return pts;
}

}  // namespace

std::string to_string(VolumeMethod method) {
  return method == VolumeMethod::grid_2d_3d ? "grid" : "quasi_mc";
}

CoveringReport volume_ratio_diag(const Body& body, const Ellipsoid& E,
                                 VolumeMethod method, std::int64_t resolution) {
  const int n = body.dim();
  if (E.dim() != n) throw error(errc::invalid_input, "volume_ratio_diag: dimension mismatch");
  if (resolution < 2) throw error(errc::invalid_input, "volume_ratio_diag: resolution too small");
  if (method == VolumeMethod::grid_2d_3d && n > 4)
    throw error(errc::invalid_input, "grid volume method supports dim <= 4");

  Eigen::SelfAdjointEigenSolver<Mat> es(E.shape);
  if (!(es.eigenvalues()(0) > 0.0))
    throw error(errc::invalid_input, "volume_ratio_diag: degenerate ellipsoid");
  const Mat shape_inv = es.operatorInverseSqrt() * es.operatorInverseSqrt();
  const double e_outer = E.radius * es.eigenvalues()(n - 1);

  const double half_extent = std::max(body.sandwich_R(), e_outer);
  const double box_volume = std::pow(2.0 * half_extent, n);

  std::int64_t in_K = 0, in_both = 0, total = 0;
  auto tally = [&](const Vec& x) {
    const bool k = body.norm(x) <= 1.0;
    const bool e = (shape_inv * x).norm() <= E.radius;
    in_K += k;
    in_both += (k && e);
    ++total;
  };

  if (method == VolumeMethod::grid_2d_3d) {
    const std::int64_t res = resolution;
    const double step = 2.0 * half_extent / static_cast<double>(res);
    Vec x(n);
    std::vector<std::int64_t> idx(n, 0);
    while (true) {
      for (int j = 0; j < n; ++j)
        x[j] = -half_extent + (static_cast<double>(idx[j]) + 0.5) * step;
      tally(x);
      int j = n - 1;
      while (j >= 0 && ++idx[j] == res) idx[j--] = 0;
      if (j < 0) break;
    }
  } else {
    Vec x(n);
    for (std::int64_t i = 1; i <= resolution; ++i) {
      for (int j = 0; j < n; ++j)
        x[j] = half_extent *
               (2.0 * halton(static_cast<std::uint64_t>(i),
                             halton_base(static_cast<unsigned>(j))) -
                1.0);
      tally(x);
    }
  }

  const double vol_K = box_volume * static_cast<double>(in_K) / static_cast<double>(total);
  const double vol_int =
      box_volume * static_cast<double>(in_both) / static_cast<double>(total);
  if (!(vol_int > 0.0))
    throw error(errc::insufficient_resolution,
                "volume_ratio_diag: no sample points in the intersection");
  const double three_n = std::pow(3.0, n);
  return CoveringReport{E.volume(),
                        vol_K,
                        vol_int,
                        three_n * vol_K / vol_int,
                        three_n * E.volume() / vol_int,
                        method,
                        total};
}

HalfVolumeResult half_volume_radius(const Body& body, const Ellipsoid& direction,
                                    std::int64_t resolution) {
  const int n = body.dim();
  if (direction.dim() != n)
    throw error(errc::invalid_input, "half_volume_radius: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Mat> es(direction.shape);
  if (!(es.eigenvalues()(0) > 0.0))
    throw error(errc::invalid_input, "half_volume_radius: degenerate ellipsoid");

  const std::vector<Vec> ball = halton_ball_points(n, resolution);
  // fraction of r*E' inside K; for each fixed sample the indicator is
  // monotone in r, so the empirical fraction is non-increasing in r
  auto fraction = [&](double r) {
    std::int64_t inside = 0;
    for (const Vec& u : ball) inside += body.norm(r * (direction.shape * u)) <= 1.0;
    return static_cast<double>(inside) / static_cast<double>(ball.size());
  };

  double lo = body.sandwich_r() / es.eigenvalues()(n - 1);
  if (fraction(lo) < 0.5)
    throw error(errc::insufficient_resolution,
                "half_volume_radius: fraction below 1/2 at the inner bracket");
  double hi = std::max(2.0 * lo, body.sandwich_R() / es.eigenvalues()(0));
  bool crossed = false;
  for (int i = 0; i < 60; ++i) {
    if (fraction(hi) < 0.5) {
      crossed = true;
      break;
    }
    lo = hi;
    hi *= 2.0;
  }
  if (!crossed) return {hi, true};

  while (hi - lo > 1e-3 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (fraction(mid) >= 0.5)
      lo = mid;
    else
      hi = mid;
  }
  return {0.5 * (lo + hi), false};
}

std::vector<Vec> covering_translates(const Ellipsoid& E, double outer_radius,
                                     std::int64_t cap) {
  const int n = E.dim();
  if (!(outer_radius > 0.0))
    throw error(errc::invalid_input, "covering_translates: outer_radius must be positive");
  Eigen::SelfAdjointEigenSolver<Mat> es(E.shape);
  const Vec lambda = es.eigenvalues();
  if (!(lambda(0) > 0.0) || !(E.radius > 0.0))
    throw error(errc::invalid_input, "covering_translates: degenerate ellipsoid");

  const double spacing = E.radius / std::sqrt(static_cast<double>(n));
  // include z iff the box translate (principal frame, half-width spacing/2
  // per axis) meets outer_radius * B2
  std::vector<std::int64_t> zmax(n);
  double count_estimate = 1.0;
  for (int i = 0; i < n; ++i) {
    zmax[i] = static_cast<std::int64_t>(
        std::floor(outer_radius / (lambda(i) * spacing) + 0.5));
    count_estimate *= 2.0 * static_cast<double>(zmax[i]) + 1.0;
  }
  if (count_estimate > static_cast<double>(cap))
    throw error(errc::cap_exceeded,
                "covering_translates: box estimate " + std::to_string(count_estimate) +
                    " exceeds cap " + std::to_string(cap));

  const double budget = outer_radius * outer_radius;
  std::vector<Vec> centers;
  std::vector<std::int64_t> z(n);
  for (int i = 0; i < n; ++i) z[i] = -zmax[i];
  while (true) {
    double d2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double excess =
          std::max(std::abs(static_cast<double>(z[i])) - 0.5, 0.0) * lambda(i) * spacing;
      d2 += excess * excess;
    }
    if (d2 <= budget) {
      Vec w(n);
      for (int i = 0; i < n; ++i) w[i] = static_cast<double>(z[i]) * lambda(i) * spacing;
      centers.push_back(es.eigenvectors() * w);
    }
    int i = n - 1;
    while (i >= 0 && ++z[i] > zmax[i]) {
      z[i] = -zmax[i];
      --i;
    }
    if (i < 0) break;
  }
  return centers;
}

}  // namespace mellip
