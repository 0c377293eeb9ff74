#include "mellip/gauss_grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <queue>
#include <unordered_set>

namespace mellip {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct VecIHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (int x : v) {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(x));
      h *= 1099511628211ULL;
    }
    return h;
  }
};

// Membership of the grid point z/s in the mode's defining region. Both
// regions are monotone under shrinking any |z_i|, so BFS from the origin
// reaches every member.
bool in_region(const std::vector<int>& z, const GridParams& p) {
  const double n = static_cast<double>(p.dim);
  if (p.mode == GridMode::cell_cover) {
    // distance from z/s to the cube C_s, coordinatewise clamp
    const double hw = p.cell_halfwidth();
    const double r = 2.0 * std::sqrt(n);
    double d2 = 0.0;
    for (int zi : z) {
      const double excess = std::max(std::abs(zi) / p.s - hw, 0.0);
      d2 += excess * excess;
    }
    return d2 <= r * r;
  }
  const double r = 3.0 * std::sqrt(n);
  double d2 = 0.0;
  for (int zi : z) d2 += (zi / p.s) * (zi / p.s);
  return d2 <= r * r;
}

}  // namespace

std::string to_string(GridMode mode) {
  return mode == GridMode::cell_cover ? "cell_cover" : "ball3";
}

double grid_sigma(int dim) {
  if (dim < 1) throw error(errc::invalid_input, "grid_sigma requires dim >= 1");
  const double n = static_cast<double>(dim);
  return (1.0 / std::sqrt(2.0 * kPi)) * std::sqrt(std::log(2.0 * (2.0 * n + 1.0)) / kPi);
}

GaussGrid GaussGrid::build(const GridParams& params, int dim_cap) {
  if (params.dim < 1) throw error(errc::invalid_input, "grid dimension must be positive");
  if (params.dim > dim_cap) {
    // per-coordinate extent gives a quick box estimate of |D|
    const double n = static_cast<double>(params.dim);
    const double reach = params.mode == GridMode::cell_cover
                             ? 2.0 * std::sqrt(n) * params.s + 0.5
                             : 3.0 * std::sqrt(n) * params.s;
    const double est = std::pow(2.0 * std::floor(reach) + 1.0, n);
    throw error(errc::cap_exceeded,
                "grid dimension " + std::to_string(params.dim) + " exceeds cap " +
                    std::to_string(dim_cap) + " (box estimate |D| <= " +
                    std::to_string(est) + ")");
  }

  const int n = params.dim;
  std::unordered_set<std::vector<int>, VecIHash> seen;
  std::queue<std::vector<int>> frontier;
  std::vector<int> origin(n, 0);
  seen.insert(origin);
  frontier.push(origin);
  while (!frontier.empty()) {
    std::vector<int> z = frontier.front();
    frontier.pop();
    for (int i = 0; i < n; ++i) {
      for (int step : {-1, +1}) {
        z[i] += step;
        if (!seen.count(z) && in_region(z, params)) {
          seen.insert(z);
          frontier.push(z);
        }
        z[i] -= step;
      }
    }
  }

  std::vector<std::vector<int>> sorted(seen.begin(), seen.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<VecI> points;
  std::vector<double> weights;
  points.reserve(sorted.size());
  weights.reserve(sorted.size());
  for (const auto& z : sorted) {
    VecI zi(n);
    for (int i = 0; i < n; ++i) zi[i] = z[i];
    points.push_back(zi);
    weights.push_back(grid_weight(zi, params));
  }
  return GaussGrid(params, std::move(points), std::move(weights));
}

Eigen::VectorXd GaussGrid::point(std::size_t i) const {
  return points_[i].cast<double>() / params_.s;
}

double GaussGrid::weight_sum() const {
  KahanSum acc;
  for (double w : weights_) acc.add(w);
  return acc.value();
}

double grid_weight(const VecI& z, const GridParams& params) {
  double w = 1.0;
  for (int i = 0; i < z.size(); ++i) w *= normal_cell_mass(z[i], params.s);
  return w;
}

double gaussian_tail_bound(int dim, double t) {
  if (t < 1.0) throw error(errc::invalid_input, "gaussian_tail_bound requires t >= 1");
  const double t2 = t * t;
  const double rate = 1.0 - (1.0 + std::log(t2)) / t2;
  return std::exp(-rate * 0.5 * static_cast<double>(dim) * t2);
}

double discrete_gaussian_mass(const Eigen::VectorXd& c, double s, int truncation) {
  if (!(s > 0.0) || truncation < 0)
    throw error(errc::invalid_input, "discrete_gaussian_mass: bad parameters");
  double total = 1.0;
  for (int i = 0; i < c.size(); ++i) {
    KahanSum axis;
    for (int z = -truncation; z <= truncation; ++z) {
      const double u = (static_cast<double>(z) + c[i]) / s;
      axis.add(std::exp(-kPi * u * u));
    }
    total *= axis.value();
  }
  return total;
}

}  // namespace mellip
