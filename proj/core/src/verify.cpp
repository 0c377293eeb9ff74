#include "mellip/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "mellip/covering.hpp"
#include "mellip/ell_solver.hpp"
#include "mellip/io.hpp"
#include "mellip/svp.hpp"

namespace mellip {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---- deterministic instance generators -----------------------------------

Mat random_gaussian_matrix(int rows, int cols, std::uint64_t seed) {
  CounterRng rng(seed);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = rng.normal(static_cast<std::uint64_t>(i) * cols + j);
  return m;
}

Mat random_symmetric(int n, std::uint64_t seed, double scale) {
  Mat g = random_gaussian_matrix(n, n, seed);
  return scale * 0.5 * (g + g.transpose());
}

Body random_polytope(int n, std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    Mat rows = random_gaussian_matrix(2 * n, n, seed + 7919 * attempt);
    for (int i = 0; i < rows.rows(); ++i) rows.row(i) /= rows.row(i).norm();
    try {
      return Body::sym_polytope(rows);
    } catch (const error&) {
      continue;
    }
  }
  throw error(errc::invalid_input, "random_polytope: generation failed");
}

LatticeBasis random_int_lattice(int n, std::uint64_t seed, int max_entry) {
  CounterRng rng(seed);
  for (std::uint64_t attempt = 0; attempt < 256; ++attempt) {
    Mat b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double u = rng.uniform(attempt * 1000003ULL +
                                     static_cast<std::uint64_t>(i) * n + j);
        b(i, j) = std::floor(u * (2.0 * max_entry + 1.0)) - max_entry;
      }
    try {
      return LatticeBasis::from_columns(b);
    } catch (const error&) {
      continue;
    }
  }
  throw error(errc::invalid_input, "random_int_lattice: generation failed");
}

// random orthogonal matrix from the QR of a Gaussian matrix
Mat random_orthogonal(int n, std::uint64_t seed) {
  Eigen::HouseholderQR<Mat> qr(random_gaussian_matrix(n, n, seed));
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}

// random element of R = {A >= 0, det A >= 1, ||A|| <= 2 n^{3/2}}: orthogonal
// conjugation of a log-balanced spectrum (det exactly ~1), optionally scaled
// up while respecting the norm cap
Mat random_in_region(int n, std::uint64_t seed) {
  CounterRng rng(seed);
  const double cap = 2.0 * std::pow(static_cast<double>(n), 1.5);
  Vec logs(n);
  for (int i = 0; i < n; ++i) logs[i] = rng.uniform(i) * 0.5 * std::log(cap);
  const double mean = logs.mean();
  Vec lambda(n);
  double lambda_max = 0.0;
  for (int i = 0; i < n; ++i) {
    lambda[i] = std::exp(logs[i] - mean);
    lambda_max = std::max(lambda_max, lambda[i]);
  }
  const double headroom = cap / lambda_max;
  const double scale = 1.0 + rng.uniform(1000) * (std::min(headroom, 1.3) - 1.0);
  lambda *= scale;
  const Mat q = random_orthogonal(n, seed ^ 0xabcdef12ULL);
  Mat a = q * lambda.asDiagonal() * q.transpose();
  return 0.5 * (a + a.transpose());
}

Body normalized(const Body& body) { return body.normalize().body; }

// the five standard test bodies in normalized position
std::vector<Body> standard_bodies(int n, std::uint64_t seed) {
  std::vector<Body> bodies;
  bodies.push_back(normalized(Body::lp_ball(n, 1.0)));
  bodies.push_back(normalized(Body::lp_ball(n, 2.0)));
  bodies.push_back(normalized(Body::lp_ball(n, std::numeric_limits<double>::infinity())));
  bodies.push_back(normalized(random_polytope(n, seed)));
  bodies.push_back(normalized(random_polytope(n, seed + 131)));
  return bodies;
}

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail << what;
    }
  }
};

// ---- criterion 1: discrete estimate vs Monte-Carlo sandwich --------------

CriterionResult criterion_sandwich(bool quick) {
  Check chk;
  const std::int64_t samples = quick ? 100000 : 1000000;
  for (int n : {2, 3, 4}) {
    const GaussGrid grid = GaussGrid::build(GridParams::make(n));
    const double s = grid.params().s;
    int body_index = 0;
    for (const Body& body : standard_bodies(n, 9100 + n)) {
      const double lt = l_tilde(body, grid);
      const McEstimate mc =
          mc_f_estimate(body, Mat::Identity(n, n), samples,
                        70000 + 17 * static_cast<std::uint64_t>(n) + body_index);
      const double lo = (1.0 - 1.0 / s) * (mc.mean - 3.0 * mc.std_error);
      const double hi = (1.0 + 1.0 / s) * (mc.mean + 3.0 * mc.std_error);
      std::ostringstream what;
      what << "n=" << n << " body#" << body_index << ": l_tilde=" << lt
           << " outside [" << lo << "," << hi << "]";
      chk.require(lo <= lt && lt <= hi, what.str());
      ++body_index;
    }
  }
  return {1, "ell-estimate sandwich", chk.ok, chk.detail.str()};
}

// ---- criterion 2: Lipschitz bound ----------------------------------------

CriterionResult criterion_lipschitz(bool quick) {
  Check chk;
  const int pairs = quick ? 20 : 100;
  for (int n : {2, 3, 4, 5}) {
    const GaussGrid grid = GaussGrid::build(GridParams::make(n));
    const std::vector<Body> bodies = standard_bodies(n, 9200 + n);
    const double lip = 2.0 * std::sqrt(static_cast<double>(n));
    for (int t = 0; t < pairs; ++t) {
      const Body& body = bodies[t % bodies.size()];
      const Mat a = random_symmetric(n, 21000 + 100 * n + t, 1.5);
      const Mat b = random_symmetric(n, 22000 + 100 * n + t, 1.5);
      const double fa = f_tilde(body, grid, a);
      const double fb = f_tilde(body, grid, b);
      const double op = ShapeMatrix{a - b}.operator_norm();
      std::ostringstream what;
      what << "n=" << n << " trial " << t << ": |df|=" << std::abs(fa - fb)
           << " > 2*sqrt(n)*||A-B|| = " << lip * op;
      chk.require(std::abs(fa - fb) <= lip * op, what.str());
    }
  }
  return {2, "f_tilde Lipschitz in operator norm", chk.ok, chk.detail.str()};
}

// ---- criterion 3: norm axioms and convexity ------------------------------

CriterionResult criterion_norm_axioms(bool quick) {
  Check chk;
  const int trials = quick ? 20 : 100;
  for (int n : {2, 3}) {
    const GaussGrid grid = GaussGrid::build(GridParams::make(n));
    const std::vector<Body> bodies = standard_bodies(n, 9300 + n);
    for (int t = 0; t < trials; ++t) {
      const Body& body = bodies[t % bodies.size()];
      const Mat a = random_symmetric(n, 31000 + 100 * n + t, 1.0);
      const Mat b = random_symmetric(n, 32000 + 100 * n + t, 1.0);
      CounterRng rng(33000 + 100 * static_cast<std::uint64_t>(n) + t);
      double c = (rng.uniform(0) - 0.5) * 6.0;
      if (std::abs(c) < 0.05) c = 0.25;

      const double fa = f_tilde(body, grid, a);
      const double fb = f_tilde(body, grid, b);
      const double fca = f_tilde(body, grid, c * a);
      chk.require(std::abs(fca - std::abs(c) * fa) <= 1e-12 * std::max(1.0, std::abs(c) * fa),
                  "homogeneity violated at n=" + std::to_string(n));
      const double fsum = f_tilde(body, grid, a + b);
      chk.require(fsum <= fa + fb + 1e-9, "triangle inequality violated");
      const double fmid = f_tilde(body, grid, 0.5 * (a + b));
      chk.require(fmid <= 0.5 * (fa + fb) + 1e-9, "midpoint convexity violated");
    }
  }
  return {3, "f_tilde norm axioms and convexity", chk.ok, chk.detail.str()};
}

// ---- criterion 4: value bounds over the solver region --------------------

CriterionResult criterion_region_bounds(bool quick) {
  Check chk;
  const int trials = quick ? 20 : 100;
  for (int n : {2, 3, 4, 5}) {
    const GaussGrid grid = GaussGrid::build(GridParams::make(n));
    const double s = grid.params().s;
    const std::vector<Body> bodies = standard_bodies(n, 9400 + n);
    // derived lower constant; trivial (negative) until s exceeds 1
    const double lower =
        0.5 * std::sqrt(2.0 / kPi) * (1.0 - 1.0 / s) / std::sqrt(static_cast<double>(n));
    const double upper = 3.0 * static_cast<double>(n) * n;
    for (int t = 0; t < trials; ++t) {
      const Body& body = bodies[t % bodies.size()];
      const Mat a = random_in_region(n, 41000 + 100 * static_cast<std::uint64_t>(n) + t);
      const double fa = f_tilde(body, grid, a);
      std::ostringstream what;
      what << "n=" << n << " trial " << t << ": f_tilde=" << fa << " outside ["
           << lower << "," << upper << "]";
      chk.require(lower <= fa && fa <= upper, what.str());
    }
  }
  return {4, "region value bounds", chk.ok, chk.detail.str()};
}

// ---- criterion 5: solver optimality on the ball --------------------------

CriterionResult criterion_solver_ball(bool quick) {
  (void)quick;
  Check chk;
  for (int n : {2, 3}) {
    const Body ball = Body::lp_ball(n, 2.0);
    const GaussGrid grid = GaussGrid::build(GridParams::make(n));
    SolverConfig cfg;
    cfg.epsilon = 0.1;
    const SolveResult res = solve_ell_program(ball, grid, cfg);
    const double f_id = f_tilde(ball, grid, Mat::Identity(n, n));
    std::ostringstream what;
    what << "n=" << n << ": value " << res.value << " outside [(1-1e-6)"
         << f_id << ", 1.1*" << f_id << "], status " << to_string(res.status);
    chk.require(res.status == SolveStatus::optimal_within_eps &&
                    res.value >= (1.0 - 1e-6) * f_id && res.value <= 1.1 * f_id,
                what.str());
  }
  return {5, "solver optimality on the ball", chk.ok, chk.detail.str()};
}

// ---- criterion 6: ellipsoid quality via volume ratios --------------------

CriterionResult criterion_ellipsoid_quality(bool quick) {
  Check chk;
  const std::int64_t hv_points = quick ? 20000 : 60000;
  const std::int64_t vol_points = quick ? 60000 : 200000;
  for (int n : {2, 3}) {
    std::vector<Body> bodies;
    bodies.push_back(normalized(Body::lp_ball(n, std::numeric_limits<double>::infinity())));
    bodies.push_back(normalized(Body::lp_ball(n, 1.0)));
    bodies.push_back(normalized(random_polytope(n, 9600 + n)));
    const GaussGrid grid = GaussGrid::build(GridParams::make(n));
    int body_index = 0;
    for (const Body& body : bodies) {
      SolverConfig cfg;
      cfg.epsilon = 0.1;
      const SolveResult res = solve_ell_program(body, grid, cfg);
      const Ellipsoid e = build_ellipsoid(res.A_opt, res.value, n);
      const HalfVolumeResult hv = half_volume_radius(body, e, hv_points);
      // harness constants (not from the analysis): c in [0.2,1], fraction 0.4
      const double c = std::clamp(hv.radius / e.radius, 0.2, 1.0);
      const Ellipsoid ce = e.scaled(c);
      const CoveringReport rep =
          volume_ratio_diag(body, ce, VolumeMethod::quasi_mc, vol_points);
      const double fraction = rep.vol_intersection_est / rep.vol_E;
      const double blowup = rep.vol_K_est / rep.vol_intersection_est;
      const double blowup_cap =
          std::pow(10.0 * std::log(static_cast<double>(n) + 2.0), n);
      std::ostringstream what;
      what << "n=" << n << " body#" << body_index << ": c=" << c
           << " fraction=" << fraction << " blowup=" << blowup
           << " cap=" << blowup_cap;
      chk.require(fraction >= 0.4 && blowup <= blowup_cap, what.str());
      ++body_index;
    }
  }
  return {6, "ellipsoid covering quality", chk.ok, chk.detail.str()};
}

// ---- criterion 7: enumeration equals brute force --------------------------

// exhaustive coefficient-box oracle, independent of the branch-and-bound path
std::set<std::vector<long long>> box_oracle_ellipsoid(const LatticeBasis& basis,
                                                      const Vec& center,
                                                      const Ellipsoid& e) {
  const int n = basis.dim();
  Eigen::SelfAdjointEigenSolver<Mat> es(e.shape);
  const Mat sinv = es.operatorInverseSqrt() * es.operatorInverseSqrt();
  const Mat bw = sinv * basis.columns;
  const Mat bw_inv = bw.fullPivLu().inverse();
  const Vec t = bw_inv * (sinv * center);
  std::vector<long long> lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    const double reach = e.radius * bw_inv.row(i).norm() + 1e-9;
    lo[i] = static_cast<long long>(std::ceil(t[i] - reach));
    hi[i] = static_cast<long long>(std::floor(t[i] + reach));
  }
  const double bound2 = e.radius * e.radius + 1e-12 * std::max(1.0, e.radius * e.radius);
  std::set<std::vector<long long>> out;
  std::vector<long long> a(lo);
  while (true) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = static_cast<double>(a[i]);
    if ((bw * v - sinv * center).squaredNorm() <= bound2) out.insert(a);
    int i = n - 1;
    while (i >= 0 && ++a[i] > hi[i]) {
      a[i] = lo[i];
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

CriterionResult criterion_enumeration_exact(bool quick) {
  Check chk;
  const int instances = quick ? 10 : 50;
  for (int n : {2, 3, 4}) {
    for (int t = 0; t < instances; ++t) {
      const std::uint64_t seed = 51000 + 1000 * static_cast<std::uint64_t>(n) + t;
      const LatticeBasis basis = random_int_lattice(n, seed, 6);
      CounterRng rng(seed ^ 0x5151ULL);
      Vec center(n);
      for (int i = 0; i < n; ++i) center[i] = 2.0 * rng.normal(i);
      const Mat q = random_orthogonal(n, seed ^ 0xabcULL);
      Vec lambda(n);
      for (int i = 0; i < n; ++i) lambda[i] = 0.5 + 1.5 * rng.uniform(100 + i);
      const Mat shape = q * lambda.asDiagonal() * q.transpose();
      const Ellipsoid e{0.5 * (shape + shape.transpose()),
                        0.8 + 1.7 * rng.uniform(200)};

      const EnumerationResult en = enumerate_in_ellipsoid(basis, center, e);
      std::set<std::vector<long long>> got;
      for (const VecZ& cvec : en.coefficients)
        got.insert(std::vector<long long>(cvec.data(), cvec.data() + n));
      const auto expected = box_oracle_ellipsoid(basis, center, e);
      std::ostringstream what;
      what << "ellipsoid enumeration n=" << n << " trial " << t << ": got "
           << got.size() << " expected " << expected.size();
      chk.require(got == expected, what.str());
    }

    // enumerate_in_body against the single-ball oracle
    const int body_instances = quick ? 5 : 20;
    const Body body = normalized(random_polytope(n, 9700 + n));
    const GaussGrid grid = GaussGrid::build(GridParams::make(n));
    SolverConfig scfg;
    scfg.epsilon = 1.0;
    const SolveResult solved = solve_ell_program(body, grid, scfg);
    const Ellipsoid e = build_ellipsoid(solved.A_opt, solved.value, n);
    for (int t = 0; t < body_instances; ++t) {
      const std::uint64_t seed = 52000 + 1000 * static_cast<std::uint64_t>(n) + t;
      const LatticeBasis basis = random_int_lattice(n, seed, 4);
      CounterRng rng(seed ^ 0x9191ULL);
      const double s = 0.8 + 3.0 * rng.uniform(0);

      const std::vector<VecZ> got_list = enumerate_in_body(basis, body, s, e);
      std::set<std::vector<long long>> got;
      for (const VecZ& cvec : got_list)
        got.insert(std::vector<long long>(cvec.data(), cvec.data() + n));

      const Ellipsoid ball{Mat::Identity(n, n), s * body.sandwich_R()};
      std::set<std::vector<long long>> expected;
      for (const auto& a : box_oracle_ellipsoid(basis, Vec::Zero(n), ball)) {
        Vec v = Vec::Zero(n);
        for (int i = 0; i < n; ++i) v += static_cast<double>(a[i]) * basis.columns.col(i);
        if (body.norm(v) <= s * (1.0 + 1e-12)) expected.insert(a);
      }
      std::ostringstream what;
      what << "body enumeration n=" << n << " trial " << t << ": got "
           << got.size() << " expected " << expected.size();
      chk.require(got == expected, what.str());
    }
  }
  return {7, "enumeration exactness vs brute force", chk.ok, chk.detail.str()};
}

// ---- criterion 8: SVP exactness and scaling audit -------------------------

struct SvpOracle {
  double value;
  bool valid;
};

// exhaustive search over reduced-basis coefficients; the box comes from the
// l2 bound ||v|| <= R * lambda2 / r with lambda2 <= min_i ||b_i|| of the
// reduced basis
SvpOracle svp_box_oracle(const LatticeBasis& basis, const Body& body,
                         double box_cap = 2.0e6) {
  const LllResult red = lll_reduce(basis);
  const int n = basis.dim();
  double lambda2_ub = red.basis.columns.col(0).norm();
  for (int i = 1; i < n; ++i)
    lambda2_ub = std::min(lambda2_ub, red.basis.columns.col(i).norm());
  const double reach_l2 =
      body.sandwich_R() * lambda2_ub / body.sandwich_r() + 1e-9;
  const Mat binv = red.basis.columns.fullPivLu().inverse();
  std::vector<long long> hi(n);
  double box_size = 1.0;
  for (int i = 0; i < n; ++i) {
    hi[i] = static_cast<long long>(std::floor(reach_l2 * binv.row(i).norm() + 1e-9));
    box_size *= 2.0 * static_cast<double>(hi[i]) + 1.0;
  }
  if (box_size > box_cap) return {0.0, false};

  bool found = false;
  double best = 0.0;
  std::vector<long long> a(n);
  for (int i = 0; i < n; ++i) a[i] = -hi[i];
  while (true) {
    bool zero = true;
    for (int i = 0; i < n; ++i) zero = zero && a[i] == 0;
    if (!zero) {
      Vec v = Vec::Zero(n);
      for (int i = 0; i < n; ++i) v += static_cast<double>(a[i]) * red.basis.columns.col(i);
      const double value = body.norm(v);
      if (!found || value < best) {
        found = true;
        best = value;
      }
    }
    int i = n - 1;
    while (i >= 0 && ++a[i] > hi[i]) {
      a[i] = -hi[i];
      --i;
    }
    if (i < 0) break;
  }
  return {best, found};
}

CriterionResult criterion_svp_exact(bool quick) {
  Check chk;
  const int instances = quick ? 8 : 50;
  const std::map<int, int> entry_range{{2, 9}, {3, 9}, {4, 6}, {5, 4}};
  for (int n : {2, 3, 4, 5}) {
    // four body families, one ellipsoid solve each
    std::vector<Body> bodies;
    bodies.push_back(normalized(Body::lp_ball(n, 1.0)));
    bodies.push_back(normalized(Body::lp_ball(n, 2.0)));
    bodies.push_back(normalized(Body::lp_ball(n, std::numeric_limits<double>::infinity())));
    bodies.push_back(normalized(random_polytope(n, 9800 + n)));
    const GaussGrid grid = GaussGrid::build(GridParams::make(n));
    std::vector<Ellipsoid> ellipsoids;
    for (const Body& body : bodies) {
      SolverConfig scfg;
      scfg.epsilon = 1.0;
      const SolveResult solved = solve_ell_program(body, grid, scfg);
      ellipsoids.push_back(build_ellipsoid(solved.A_opt, solved.value, n));
    }

    for (int t = 0; t < instances; ++t) {
      LatticeBasis basis = random_int_lattice(
          n, 61000 + 1000 * static_cast<std::uint64_t>(n) + t, entry_range.at(n));
      for (std::size_t bi = 0; bi < bodies.size(); ++bi) {
        const Body& body = bodies[bi];
        const SvpOracle oracle = svp_box_oracle(basis, body);
        if (!oracle.valid) continue;  // box over cap; instance skipped

        SvpConfig cfg;
        cfg.precomputed_ellipsoid = ellipsoids[bi];
        const SvpResult res = svp(basis, body, cfg);
        std::ostringstream what;
        what << "n=" << n << " trial " << t << " body#" << bi << ": svp value "
             << res.norm_value << " != oracle " << oracle.value;
        chk.require(res.norm_value == oracle.value, what.str());

        // scaling-guess audit: nonempty at s, empty at s/2 (zero excluded)
        const NormalizedBody pos = body.normalize();
        const LatticeBasis working =
            LatticeBasis::from_columns(pos.transform * basis.columns);
        auto nonzero_at = [&](double scale) {
          const std::vector<VecZ> pts = enumerate_in_body(
              working, pos.body, scale, ellipsoids[bi], SvpCaps{}, true);
          for (const VecZ& a : pts)
            if (!a.isZero()) return true;
          return false;
        };
        std::ostringstream what2;
        what2 << "n=" << n << " trial " << t << " body#" << bi
              << ": scaling audit failed at s=" << res.scale_used;
        chk.require(nonzero_at(res.scale_used) && !nonzero_at(res.scale_used / 2.0),
                    what2.str());
      }
    }
  }
  return {8, "svp exactness and scaling audit", chk.ok, chk.detail.str()};
}

// ---- criterion 9: probabilistic bound audits -------------------------------

CriterionResult criterion_probabilistic(bool quick) {
  Check chk;
  const std::int64_t samples = quick ? 100000 : 1000000;

  // uniform vs gaussian comparison on the standard bodies
  for (int n : {1, 2, 3}) {
    std::vector<Body> bodies;
    bodies.push_back(Body::lp_ball(n, 2.0));
    if (n >= 2) {
      bodies.push_back(Body::lp_ball(n, 1.0));
      bodies.push_back(Body::lp_ball(n, std::numeric_limits<double>::infinity()));
      bodies.push_back(random_polytope(n, 9900 + n));
    }
    int body_index = 0;
    for (const Body& body : bodies) {
      const UniformGaussianCheck r = uniform_vs_gaussian_check(
          body, samples, 91000 + 10 * static_cast<std::uint64_t>(n) + body_index);
      std::ostringstream what;
      what << "uniform/gaussian n=" << n << " body#" << body_index << ": lhs "
           << r.lhs << " > rhs " << r.rhs << " + 3 sigma";
      chk.require(r.lhs <= r.rhs + 3.0 * (r.lhs_std_error + r.rhs_std_error),
                  what.str());
      ++body_index;
    }
  }

  // discrete gaussian mass band at t = 2n, s = sqrt(ln(2(2n+1))/pi)
  for (int n : {1, 2}) {
    const double t = 2.0 * n;
    const double s = std::sqrt(std::log(2.0 * (2.0 * n + 1.0)) / kPi);
    const double lo = std::pow(1.0 - 1.0 / t, n) * std::pow(s, n);
    const double hi = std::pow(1.0 + 1.0 / t, n) * std::pow(s, n);
    CounterRng rng(92000 + static_cast<std::uint64_t>(n));
    for (int trial = 0; trial < 20; ++trial) {
      Vec c(n);
      for (int i = 0; i < n; ++i)
        c[i] = rng.uniform(static_cast<std::uint64_t>(trial) * n + i);
      const double mass = discrete_gaussian_mass(c, s, 14);
      std::ostringstream what;
      what << "zn mass n=" << n << " trial " << trial << ": " << mass
           << " outside [" << lo << "," << hi << "]";
      chk.require(lo <= mass && mass <= hi, what.str());
    }
  }

  // gaussian tail bound dominates Monte-Carlo tail frequencies
  for (int n : {2, 4}) {
    for (double t : {1.5, 2.0}) {
      const double bound = gaussian_tail_bound(n, t);
      CounterRng rng(93000 + 10 * static_cast<std::uint64_t>(n) +
                     static_cast<std::uint64_t>(t * 2));
      std::int64_t hits = 0;
      const double threshold2 = t * t * static_cast<double>(n);
      for (std::int64_t i = 0; i < samples; ++i) {
        double sq = 0.0;
        for (int j = 0; j < n; ++j) {
          const double g = rng.normal(static_cast<std::uint64_t>(i) * n + j);
          sq += g * g;
        }
        hits += sq >= threshold2;
      }
      const double freq = static_cast<double>(hits) / static_cast<double>(samples);
      std::ostringstream what;
      what << "tail n=" << n << " t=" << t << ": frequency " << freq
           << " exceeds bound " << bound;
      chk.require(freq <= bound, what.str());
    }
  }
  return {9, "probabilistic bound audits", chk.ok, chk.detail.str()};
}

// ---- criterion 10: determinism --------------------------------------------

std::string pipeline_fingerprint() {
  std::ostringstream out;
  out.precision(17);
  const int n = 2;
  const GaussGrid grid = GaussGrid::build(GridParams::make(n));
  out << grid.size() << ":" << grid.weight_sum() << ";";
  const Body body = Body::lp_ball(n, 2.0);
  out << l_tilde(body, grid) << ";";
  SolverConfig cfg;
  cfg.epsilon = 0.5;
  const SolveResult res = solve_ell_program(body, grid, cfg);
  out << res.value << ":" << res.iterations << ":" << matrix_to_json(res.A_opt.entries).dump()
      << ";";
  const McEstimate mc = mc_f_estimate(body, Mat::Identity(n, n), 10000, 42);
  out << mc.mean << ":" << mc.std_error << ";";
  Mat cols(2, 2);
  cols << 2, 1, 0, 2;
  const SvpResult sv = svp(LatticeBasis::from_columns(cols), Body::lp_ball(2, 1.0));
  out << vector_to_json(sv.vector).dump() << ":" << sv.norm_value << ":"
      << sv.scale_used << ";";
  return out.str();
}

CriterionResult criterion_determinism(bool quick) {
  (void)quick;
  Check chk;
  const std::string a = pipeline_fingerprint();
  const std::string b = pipeline_fingerprint();
  chk.require(a == b, "pipeline fingerprints differ between runs");
  // no library code path reads a thread count; the CLI --threads flag is a
  // documented no-op on output, revalidated here by construction
  return {10, "bit-identical reruns", chk.ok, chk.detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            std::ostream* progress) {
  using Runner = CriterionResult (*)(bool);
  const std::vector<Runner> runners = {
      criterion_sandwich,       criterion_lipschitz,     criterion_norm_axioms,
      criterion_region_bounds,  criterion_solver_ball,   criterion_ellipsoid_quality,
      criterion_enumeration_exact, criterion_svp_exact,  criterion_probabilistic,
      criterion_determinism};

  std::vector<CriterionResult> results;
  for (int id = 1; id <= static_cast<int>(runners.size()); ++id) {
    if (!options.criteria.empty() &&
        std::find(options.criteria.begin(), options.criteria.end(), id) ==
            options.criteria.end())
      continue;
    CriterionResult r = runners[static_cast<std::size_t>(id - 1)](options.quick);
    if (progress) {
      (*progress) << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << ": "
                  << r.name;
      if (!r.passed && !r.detail.empty()) (*progress) << " [" << r.detail << "]";
      (*progress) << std::endl;
    }
    results.push_back(std::move(r));
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace mellip
