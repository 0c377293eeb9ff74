#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "mellip/svp.hpp"

using namespace mellip;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

LatticeBasis random_int_basis(int n, std::uint64_t seed, int max_entry) {
  CounterRng rng(seed);
  for (std::uint64_t attempt = 0;; ++attempt) {
    REQUIRE(attempt < 200);
    Mat b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double u =
            rng.uniform(attempt * 4096 + static_cast<std::uint64_t>(i) * n + j);
        b(i, j) = std::floor(u * (2 * max_entry + 1)) - max_entry;
      }
    try {
      return LatticeBasis::from_columns(b);
    } catch (const error&) {
    }
  }
}

Body random_polytope(int n, std::uint64_t seed) {
  CounterRng rng(seed);
  for (std::uint64_t attempt = 0;; ++attempt) {
    REQUIRE(attempt < 64);
    Mat rows(2 * n, n);
    for (int i = 0; i < rows.rows(); ++i) {
      for (int j = 0; j < n; ++j)
        rows(i, j) = rng.normal(attempt * 65536 + static_cast<std::uint64_t>(i) * n + j);
      rows.row(i) /= rows.row(i).norm();
    }
    try {
      return Body::sym_polytope(rows);
    } catch (const error&) {
    }
  }
}

// exhaustive minimum of the gauge over reduced-basis coefficients
double oracle_min_norm(const LatticeBasis& basis, const Body& body) {
  const LllResult red = lll_reduce(basis);
  const int n = basis.dim();
  double lambda2 = red.basis.columns.col(0).norm();
  for (int i = 1; i < n; ++i)
    lambda2 = std::min(lambda2, red.basis.columns.col(i).norm());
  const double reach = body.sandwich_R() * lambda2 / body.sandwich_r() + 1e-9;
  const Mat binv = red.basis.columns.inverse();
  std::vector<long long> hi(n);
  for (int i = 0; i < n; ++i)
    hi[i] = static_cast<long long>(std::floor(reach * binv.row(i).norm() + 1e-9));
  double best = 1e300;
  std::vector<long long> a(n);
  for (int i = 0; i < n; ++i) a[i] = -hi[i];
  while (true) {
    bool zero = true;
    for (int i = 0; i < n; ++i) zero = zero && a[i] == 0;
    if (!zero) {
      Vec v = Vec::Zero(n);
      for (int i = 0; i < n; ++i) v += static_cast<double>(a[i]) * red.basis.columns.col(i);
      best = std::min(best, body.norm(v));
    }
    int i = n - 1;
    while (i >= 0 && ++a[i] > hi[i]) {
      a[i] = -hi[i];
      --i;
    }
    if (i < 0) break;
  }
  return best;
}

}  // namespace

TEST_CASE("enumerate_in_body: hand examples on the integer lattice") {
  const LatticeBasis z2 = LatticeBasis::from_columns(Mat::Identity(2, 2));
  const Ellipsoid unit{Mat::Identity(2, 2), 1.0};
  SUBCASE("max norm at scale one holds nine points") {
    const Body cube = Body::lp_ball(2, kInf);
    const std::vector<VecZ> pts = enumerate_in_body(z2, cube, 1.0, unit);
    CHECK(pts.size() == 9);
  }
  SUBCASE("l1 ball at scale 1.5 excludes the diagonals") {
    const Body l1 = Body::lp_ball(2, 1.0).normalize().body;
    // normalized l1 ball: gauge scaled by sqrt(2); adjust the scale so the
    // target set is ||v||_1 <= 1.5
    const double s = 1.5 / std::sqrt(2.0);
    const std::vector<VecZ> pts = enumerate_in_body(z2, l1, s, unit);
    std::set<std::pair<long long, long long>> got;
    for (const VecZ& a : pts) got.insert({a[0], a[1]});
    const std::set<std::pair<long long, long long>> expected = {
        {0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    CHECK(got == expected);
  }
  SUBCASE("fallback ball produces the identical set") {
    const Body cube = Body::lp_ball(2, kInf);
    const std::vector<VecZ> a = enumerate_in_body(z2, cube, 1.0, unit, {}, false);
    const std::vector<VecZ> b = enumerate_in_body(z2, cube, 1.0, unit, {}, true);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  }
}

TEST_CASE("svp: cube norm on the integer lattice") {
  const LatticeBasis z3 = LatticeBasis::from_columns(Mat::Identity(3, 3));
  const SvpResult r = svp(z3, Body::lp_ball(3, kInf));
  CHECK(r.norm_value == 1.0);
  CHECK(r.coefficients[0] == 1);
  CHECK(r.coefficients[1] == 0);
  CHECK(r.coefficients[2] == 0);
  CHECK(r.vector[0] == 1.0);
}

TEST_CASE("svp: l1 norm on the (2,0),(1,2) lattice") {
  const LatticeBasis basis = LatticeBasis::from_columns(mat2(2, 1, 0, 2));
  const Body l1 = Body::lp_ball(2, 1.0);
  const SvpResult r = svp(basis, l1);
  // candidates: (2,0) -> 2, (1,2) -> 3, (1,-2) -> 3; minimum is 2
  CHECK(r.norm_value == 2.0);
  CHECK(std::abs(r.vector[0]) == 2.0);
  CHECK(r.vector[1] == 0.0);
  CHECK(r.norm_value == oracle_min_norm(basis, l1));
}

TEST_CASE("svp: exactness against the oracle on random instances") {
  for (int n : {2, 3, 4}) {
    std::vector<Body> bodies;
    bodies.push_back(Body::lp_ball(n, 1.0));
    bodies.push_back(Body::lp_ball(n, 2.0));
    bodies.push_back(Body::lp_ball(n, kInf));
    bodies.push_back(random_polytope(n, 4200 + n));
    for (std::uint64_t t = 0; t < 12; ++t) {
      const LatticeBasis basis = random_int_basis(n, 7000 + 100 * n + t, n <= 3 ? 8 : 5);
      for (const Body& body : bodies) {
        const SvpResult r = svp(basis, body);
        CHECK(r.norm_value == oracle_min_norm(basis, body));
        // returned witness is consistent
        CHECK(body.norm(r.vector) == r.norm_value);
        CHECK(body.norm(basis.vector(r.coefficients)) == r.norm_value);
        CHECK(r.norm_value > 0.0);
        // boundary membership of the normalized witness
        CHECK(body.norm(r.vector / r.norm_value) == doctest::Approx(1.0).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("svp: scaling guess lands within a factor two") {
  for (std::uint64_t t = 0; t < 10; ++t) {
    const LatticeBasis basis = random_int_basis(3, 11000 + t, 6);
    const Body body = Body::lp_ball(3, 1.0);
    const SvpResult r = svp(basis, body);
    CHECK(r.norm_value <= r.scale_used * (1.0 + 1e-12));
    CHECK(r.norm_value > 0.5 * r.scale_used * (1.0 - 1e-12));
  }
}

TEST_CASE("svp: fallback path returns identical values and labels itself") {
  const LatticeBasis basis = random_int_basis(3, 12000, 7);
  const Body body = Body::lp_ball(3, 1.0);
  SvpConfig covering_cfg;
  SvpConfig fallback_cfg;
  fallback_cfg.fallback_ball = true;
  const SvpResult a = svp(basis, body, covering_cfg);
  const SvpResult b = svp(basis, body, fallback_cfg);
  CHECK_FALSE(a.used_fallback);
  CHECK(b.used_fallback);
  CHECK(a.norm_value == b.norm_value);
  CHECK(a.coefficients == b.coefficients);
  CHECK(b.translates_enumerated <= a.translates_enumerated);
}

TEST_CASE("svp: negated basis finds the same value") {
  const LatticeBasis basis = random_int_basis(3, 13000, 7);
  const LatticeBasis negated = LatticeBasis::from_columns(Mat(-basis.columns));
  const Body body = random_polytope(3, 4300);
  CHECK(svp(basis, body).norm_value == svp(negated, body).norm_value);
}

TEST_CASE("svp: determinism") {
  const LatticeBasis basis = random_int_basis(4, 14000, 5);
  const Body body = Body::lp_ball(4, 1.0);
  const SvpResult a = svp(basis, body);
  const SvpResult b = svp(basis, body);
  CHECK(a.norm_value == b.norm_value);
  CHECK(a.coefficients == b.coefficients);
  CHECK(a.scale_used == b.scale_used);
  CHECK(a.translates_enumerated == b.translates_enumerated);
  CHECK(a.points_examined == b.points_examined);
}

TEST_CASE("svp: precomputed ellipsoid shortcut matches the full pipeline") {
  const int n = 3;
  const Body body = Body::lp_ball(n, 1.0);
  const NormalizedBody pos = body.normalize();
  const GaussGrid grid = GaussGrid::build(GridParams::make(n));
  SolverConfig scfg;
  scfg.epsilon = 1.0;
  const SolveResult solved = solve_ell_program(pos.body, grid, scfg);
  SvpConfig cfg;
  cfg.precomputed_ellipsoid = build_ellipsoid(solved.A_opt, solved.value, n);
  for (std::uint64_t t = 0; t < 5; ++t) {
    const LatticeBasis basis = random_int_basis(n, 15000 + t, 6);
    CHECK(svp(basis, body, cfg).norm_value == svp(basis, body).norm_value);
  }
}

TEST_CASE("svp: caps propagate") {
  const LatticeBasis basis = random_int_basis(3, 16000, 6);
  const Body body = Body::lp_ball(3, 2.0);
  SvpConfig cfg;
  cfg.caps.node_cap = 3;
  CHECK_THROWS_AS(svp(basis, body, cfg), error);
}
