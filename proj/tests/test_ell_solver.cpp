#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "mellip/ell_solver.hpp"

using namespace mellip;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Mat random_feasible(int n, std::uint64_t seed) {
  // orthogonal conjugation of a det-1 spectrum inside the norm cap
  CounterRng rng(seed);
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal(static_cast<std::uint64_t>(i) * n + j);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Vec logs(n);
  for (int i = 0; i < n; ++i) logs[i] = rng.uniform(100 + i);
  logs.array() -= logs.mean();
  Vec lambda = logs.array().exp();
  Mat a = q * lambda.asDiagonal() * q.transpose();
  return 0.5 * (a + a.transpose());
}

void check_result_invariants(const SolveResult& res, const Body& body,
                             const GaussGrid& grid) {
  const int n = grid.dim();
  CHECK(res.A_opt.is_symmetric(1e-9));
  Eigen::SelfAdjointEigenSolver<Mat> es(res.A_opt.entries);
  CHECK(es.eigenvalues()(0) >= -1e-9);
  CHECK(res.A_opt.determinant() >= 1.0 - 1e-9);
  CHECK(res.A_opt.operator_norm() <=
        2.0 * std::pow(static_cast<double>(n), 1.5) + 1e-9);
  // stored value must be reproducible from scratch
  CHECK(f_tilde(body, grid, res.A_opt.entries) ==
        doctest::Approx(res.value).epsilon(1e-12));
}

}  // namespace

TEST_CASE("ball optimum is the identity") {
  for (int n : {2, 3}) {
    const Body ball = Body::lp_ball(n, 2.0);
    const GaussGrid grid = GaussGrid::build(GridParams::make(n));
    SolverConfig cfg;
    cfg.epsilon = 0.1;
    const SolveResult res = solve_ell_program(ball, grid, cfg);
    const double f_id = f_tilde(ball, grid, Mat::Identity(n, n));
    CHECK(res.status == SolveStatus::optimal_within_eps);
    CHECK(res.certified_gap <= 0.1);
    CHECK(res.value >= (1.0 - 1e-6) * f_id);
    CHECK(res.value <= 1.1 * f_id);
    check_result_invariants(res, ball, grid);
    // at the optimum the determinant sits on the constraint
    CHECK(res.A_opt.determinant() <= 1.0 + 1e-6);
  }
}

TEST_CASE("anisotropic ellipsoid body recovers its shape") {
  // K = diag(2,1) B2 sits inside the sandwich already; the substitution
  // B = M^{-1} A reduces the program to the ball case, whose optimum is the
  // det-1 multiple of M: diag(sqrt 2, 1/sqrt 2)
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 2.0;
  m(1, 1) = 1.0;
  const Body body = Body::ellipsoid_body(m);
  const GaussGrid grid = GaussGrid::build(GridParams::make(2));
  SolverConfig cfg;
  cfg.epsilon = 0.1;
  const SolveResult res = solve_ell_program(body, grid, cfg);
  Mat expected = Mat::Zero(2, 2);
  expected(0, 0) = std::sqrt(2.0);
  expected(1, 1) = 1.0 / std::sqrt(2.0);
  const double f_expected = f_tilde(body, grid, expected);
  CHECK(res.value <= (1.0 + 0.1) * f_expected);
  CHECK(res.value >= (1.0 - 1e-6) * f_expected);
  CHECK(res.A_opt.entries(0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(0.02));
  CHECK(res.A_opt.entries(1, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.02));

  // an extreme aspect body is rounded exactly onto the ball first, where
  // the identity is optimal
  Mat extreme = Mat::Zero(2, 2);
  extreme(0, 0) = 4.0;
  extreme(1, 1) = 0.25;
  const NormalizedBody pos = Body::ellipsoid_body(extreme).normalize();
  const SolveResult res2 = solve_ell_program(pos.body, grid, cfg);
  CHECK(res2.A_opt.entries(0, 0) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(res2.value <= 1.1 * l_tilde(pos.body, grid));
}

TEST_CASE("coarse accuracy still returns a feasible matrix") {
  const Body cube = Body::lp_ball(3, kInf);
  const GaussGrid grid = GaussGrid::build(GridParams::make(3));
  SolverConfig cfg;
  cfg.epsilon = 1.0;
  const SolveResult res = solve_ell_program(cube, grid, cfg);
  check_result_invariants(res, cube, grid);
}

TEST_CASE("dimension one short-circuits to the identity") {
  const Body seg = Body::lp_ball(1, 2.0);
  const GaussGrid grid = GaussGrid::build(GridParams::make(1));
  SolverConfig cfg;
  const SolveResult res = solve_ell_program(seg, grid, cfg);
  CHECK(res.A_opt.entries(0, 0) == 1.0);
  CHECK(res.value == l_tilde(seg, grid));
  CHECK(res.status == SolveStatus::optimal_within_eps);
}

TEST_CASE("solver rejects unnormalized bodies and bad epsilon") {
  const Body l1 = Body::lp_ball(3, 1.0);  // r < 1
  const GaussGrid grid = GaussGrid::build(GridParams::make(3));
  SolverConfig cfg;
  CHECK_THROWS_AS(solve_ell_program(l1, grid, cfg), error);
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(solve_ell_program(Body::lp_ball(3, 2.0), grid, cfg), error);
  cfg.epsilon = 2.0;
  CHECK_THROWS_AS(solve_ell_program(Body::lp_ball(3, 2.0), grid, cfg), error);
}

TEST_CASE("iteration limit reports the incumbent honestly") {
  const Body ball = Body::lp_ball(2, 2.0);
  const GaussGrid grid = GaussGrid::build(GridParams::make(2));
  SolverConfig cfg;
  cfg.epsilon = 0.1;
  cfg.max_iterations = 20;
  const SolveResult res = solve_ell_program(ball, grid, cfg);
  CHECK(res.status == SolveStatus::iteration_limit);
  CHECK(res.iterations == 20);
  CHECK(res.certified_gap > 0.1);
  check_result_invariants(res, ball, grid);
}

TEST_CASE("objective bounds bracket the region values") {
  for (int n : {2, 3, 4}) {
    const GaussGrid grid = GaussGrid::build(GridParams::make(n));
    const ObjectiveBounds bounds = objective_bounds(grid);
    CHECK(bounds.lower > 0.0);
    CHECK(bounds.upper <= 3.0 * n * n + 1e-9);
    const Body body = Body::lp_ball(n, 2.0);
    for (std::uint64_t t = 0; t < 20; ++t) {
      const Mat a = random_feasible(n, 1000 * n + t);
      const double v = f_tilde(body, grid, a);
      CHECK(v >= bounds.lower);
      CHECK(v <= bounds.upper);
    }
  }
}

TEST_CASE("cut directions never exclude feasible points") {
  const int n = 3;
  const double cap = 2.0 * std::pow(3.0, 1.5);
  // PSD violation cut
  Mat a = Mat::Identity(n, n);
  a(0, 0) = -0.5;
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  const Vec v = es.eigenvectors().col(0);
  for (std::uint64_t t = 0; t < 40; ++t) {
    const Mat b = random_feasible(n, 2000 + t);
    // keep-halfspace is {B : <-vv^T, B - A> <= 0}
    CHECK(v.dot(b * v) >= v.dot(a * v) - 1e-12);
    // determinant cut at det < 1: keep-halfspace contains every det >= 1
    Mat small = 0.5 * Mat::Identity(n, n);
    CHECK((small.inverse().array() * (b - small).array()).sum() >= -1e-9);
    // operator norm cut at ||A|| > cap
    Mat big = (cap + 1.0) * Mat::Identity(n, n);
    Eigen::SelfAdjointEigenSolver<Mat> es_big(big);
    const Vec u = es_big.eigenvectors().col(n - 1);
    CHECK(u.dot(b * u) <= u.dot(big * u) + 1e-12);
  }
}

TEST_CASE("determinism: identical runs produce identical results") {
  const Body cube = Body::lp_ball(2, kInf);
  const GaussGrid grid = GaussGrid::build(GridParams::make(2));
  SolverConfig cfg;
  cfg.epsilon = 0.3;
  const SolveResult r1 = solve_ell_program(cube, grid, cfg);
  const SolveResult r2 = solve_ell_program(cube, grid, cfg);
  CHECK(r1.value == r2.value);
  CHECK(r1.iterations == r2.iterations);
  CHECK((r1.A_opt.entries - r2.A_opt.entries).norm() == 0.0);
}

TEST_CASE("build_ellipsoid") {
  const int n = 2;
  const ShapeMatrix id = ShapeMatrix::identity(n);
  SUBCASE("identity at value sqrt(n) is the unit ball") {
    const Ellipsoid e = build_ellipsoid(id, std::sqrt(2.0), n);
    CHECK(e.radius == doctest::Approx(1.0));
    CHECK(e.volume() == doctest::Approx(3.141592653589793).epsilon(1e-12));
  }
  SUBCASE("ball body radius") {
    const Ellipsoid e = build_ellipsoid(id, 1.2533141373155003, n);
    CHECK(e.radius == doctest::Approx(1.1283791670955126).epsilon(1e-12));
  }
  SUBCASE("scaling leaves the set unchanged") {
    Mat m(2, 2);
    m << 2, 0.5, 0.5, 1;
    const double c = 3.7;
    const Ellipsoid e1 = build_ellipsoid(ShapeMatrix{m}, 2.0, n);
    const Ellipsoid e2 = build_ellipsoid(ShapeMatrix{Mat(c * m)}, c * 2.0, n);
    CHECK(e1.volume() == doctest::Approx(e2.volume()).epsilon(1e-12));
    // same set: the canonical PSD representative radius*shape must agree
    CHECK((e1.radius * e1.shape - e2.radius * e2.shape).norm() < 1e-12);
  }
  SUBCASE("volume accessor consistent with the determinant") {
    Mat m(2, 2);
    m << 3, 1, 1, 2;
    const Ellipsoid e{m, 1.5};
    CHECK(e.volume() ==
          doctest::Approx(1.5 * 1.5 * 5.0 * 3.14159265358979).epsilon(1e-9));
  }
  CHECK_THROWS_AS(build_ellipsoid(id, 0.0, n), error);
  CHECK_THROWS_AS(build_ellipsoid(id, -1.0, n), error);
}
