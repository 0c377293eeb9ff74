#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "mellip/lattice.hpp"
#include "mellip/numeric.hpp"

using namespace mellip;

namespace {

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

// exhaustive search over a coefficient box, independent of Fincke-Pohst
std::set<std::vector<long long>> brute_points(const LatticeBasis& basis,
                                              const Vec& center, const Ellipsoid& e) {
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

}  // namespace

TEST_CASE("basis validation and integrality detection") {
  CHECK(LatticeBasis::from_columns(Mat::Identity(3, 3)).integral);
  CHECK_FALSE(LatticeBasis::from_columns(mat2(1, 0.5, 0, 1)).integral);
  CHECK_THROWS_AS(LatticeBasis::from_columns(mat2(1, 2, 2, 4)), error);
  Mat tall(3, 2);
  CHECK_THROWS_AS(LatticeBasis::from_columns(tall), error);
}

TEST_CASE("lll: identity is untouched") {
  const LatticeBasis id = LatticeBasis::from_columns(Mat::Identity(4, 4));
  const LllResult r = lll_reduce(id);
  CHECK(r.basis.columns.isIdentity(0.0));
  CHECK(r.transform.cast<double>().isIdentity(0.0));
  CHECK(is_lll_reduced(r.basis));
}

TEST_CASE("lll: near-parallel columns reduce to the short vector") {
  // columns (1000,0) and (999,1): the lattice contains (-1,1)
  const LatticeBasis skew = LatticeBasis::from_columns(mat2(1000, 999, 0, 1));
  const LllResult r = lll_reduce(skew);
  CHECK(is_lll_reduced(r.basis));
  CHECK(gram_determinant_equal(skew, r.basis));
  // shortest vector of this lattice is +-(1,-1)...(norm sqrt 2) and it must
  // appear as the first reduced column up to sign
  const Vec b0 = r.basis.columns.col(0);
  CHECK(b0.squaredNorm() == 2.0);
  CHECK(std::abs(b0[0]) == 1.0);
  CHECK(std::abs(b0[1]) == 1.0);
}

TEST_CASE("lll: random integer bases keep the lattice") {
  for (int n : {2, 3, 4}) {
    for (std::uint64_t t = 0; t < 25; ++t) {
      const LatticeBasis basis = random_int_basis(n, 100 * n + t, 9);
      const LllResult r = lll_reduce(basis);
      CHECK(r.basis.integral);
      CHECK(is_lll_reduced(r.basis));
      // exact determinant invariance through integer arithmetic
      CHECK(gram_determinant_equal(basis, r.basis));
      // transform is unimodular and consistent
      const Mat reconstructed = basis.columns * r.transform.cast<double>();
      CHECK((reconstructed - r.basis.columns).norm() == 0.0);
      const double det_u = r.transform.cast<double>().determinant();
      CHECK(std::abs(std::abs(det_u) - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("lll: float bases reduce with relative determinant tolerance") {
  Mat b(3, 3);
  b << 1.5, 0.25, 8.75, 0.0, 2.25, 7.5, 0.0, 0.0, 0.125;
  const LatticeBasis basis = LatticeBasis::from_columns(b);
  CHECK_FALSE(basis.integral);
  const LllResult r = lll_reduce(basis);
  CHECK(is_lll_reduced(r.basis));
  CHECK(gram_determinant_equal(basis, r.basis));
  CHECK_THROWS_AS(lll_reduce(basis, 0.1), error);
  CHECK_THROWS_AS(lll_reduce(basis, 1.0), error);
}

TEST_CASE("enumerate: hand examples on the integer lattice") {
  const LatticeBasis z2 = LatticeBasis::from_columns(Mat::Identity(2, 2));
  SUBCASE("ball radius 1.5 around the origin holds 9 points") {
    const EnumerationResult r =
        enumerate_in_ellipsoid(z2, Vec::Zero(2), Ellipsoid{Mat::Identity(2, 2), 1.5});
    CHECK(r.points.size() == 9);
  }
  SUBCASE("ball radius 0.6 around (0.5, 0)") {
    Vec c(2);
    c << 0.5, 0.0;
    const EnumerationResult r =
        enumerate_in_ellipsoid(z2, c, Ellipsoid{Mat::Identity(2, 2), 0.6});
    REQUIRE(r.points.size() == 2);
    CHECK(r.points[0][0] == 0.0);
    CHECK(r.points[1][0] == 1.0);
  }
  SUBCASE("boundary points are included") {
    const EnumerationResult r =
        enumerate_in_ellipsoid(z2, Vec::Zero(2), Ellipsoid{Mat::Identity(2, 2), 1.0});
    CHECK(r.points.size() == 5);  // origin and the four unit vectors
  }
}

TEST_CASE("enumerate: equals brute force on random instances") {
  for (int n : {2, 3, 4}) {
    for (std::uint64_t t = 0; t < 50; ++t) {
      const LatticeBasis basis = random_int_basis(n, 5000 + 97 * n + t, 5);
      CounterRng rng(6000 + t);
      Vec center(n);
      for (int i = 0; i < n; ++i) center[i] = 2.5 * rng.normal(i);
      Mat q(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q(i, j) = rng.normal(64 + static_cast<std::uint64_t>(i) * n + j);
      Eigen::HouseholderQR<Mat> qr(q);
      Mat orth = qr.householderQ();
      Vec lambda(n);
      for (int i = 0; i < n; ++i) lambda[i] = 0.6 + 1.2 * rng.uniform(128 + i);
      Mat shape = orth * lambda.asDiagonal() * orth.transpose();
      shape = 0.5 * (shape + shape.transpose());
      const Ellipsoid e{shape, 0.9 + 1.4 * rng.uniform(256)};

      const EnumerationResult got = enumerate_in_ellipsoid(basis, center, e);
      std::set<std::vector<long long>> got_set;
      for (const VecZ& cvec : got.coefficients)
        got_set.insert(std::vector<long long>(cvec.data(), cvec.data() + n));
      CHECK(got_set.size() == got.coefficients.size());  // no duplicates
      CHECK(got_set == brute_points(basis, center, e));
    }
  }
}

TEST_CASE("enumerate: node cap refusal") {
  const LatticeBasis z3 = LatticeBasis::from_columns(Mat::Identity(3, 3));
  CHECK_THROWS_AS(enumerate_in_ellipsoid(z3, Vec::Zero(3),
                                         Ellipsoid{Mat::Identity(3, 3), 40.0}, 100),
                  error);
}

TEST_CASE("shortest vector: ties resolve to the first unit vector") {
  for (int n : {2, 3, 4}) {
    const ShortestVectorResult r =
        shortest_vector_l2(LatticeBasis::from_columns(Mat::Identity(n, n)));
    CHECK(r.norm == 1.0);
    CHECK(r.coefficients[0] == 1);
    for (int i = 1; i < n; ++i) CHECK(r.coefficients[i] == 0);
  }
}

TEST_CASE("shortest vector: brute-force verified examples") {
  SUBCASE("columns (2,0) and (1,2)") {
    const LatticeBasis basis = LatticeBasis::from_columns(mat2(2, 1, 0, 2));
    const ShortestVectorResult r = shortest_vector_l2(basis);
    CHECK(r.norm == 2.0);  // (2,0) beats (1,2) and (1,-2) at sqrt 5
    CHECK(std::abs(r.vector[0]) == 2.0);
    CHECK(r.vector[1] == 0.0);
  }
  SUBCASE("random bases against exhaustive search") {
    for (int n : {2, 3}) {
      for (std::uint64_t t = 0; t < 30; ++t) {
        const LatticeBasis basis = random_int_basis(n, 9000 + 31 * n + t, 7);
        const ShortestVectorResult r = shortest_vector_l2(basis);
        // exhaustive scan over reduced-basis coefficients; the box comes
        // from the Cramer bound |a_i| <= ||row_i(B^-1)|| * min_j ||b_j||
        const LllResult red = lll_reduce(basis);
        double reach = red.basis.columns.col(0).norm();
        for (int i = 1; i < n; ++i)
          reach = std::min(reach, red.basis.columns.col(i).norm());
        const Mat binv = red.basis.columns.inverse();
        std::vector<long long> hi(n);
        for (int i = 0; i < n; ++i)
          hi[i] = static_cast<long long>(std::floor(reach * binv.row(i).norm() + 1e-9));
        double best = 1e300;
        std::vector<long long> a(n);
        for (int i = 0; i < n; ++i) a[i] = -hi[i];
        while (true) {
          Vec v = Vec::Zero(n);
          bool zero = true;
          for (int i = 0; i < n; ++i) {
            v += static_cast<double>(a[i]) * red.basis.columns.col(i);
            zero = zero && a[i] == 0;
          }
          if (!zero) best = std::min(best, v.squaredNorm());
          int i = n - 1;
          while (i >= 0 && ++a[i] > hi[i]) {
            a[i] = -hi[i];
            --i;
          }
          if (i < 0) break;
        }
        CHECK(r.norm * r.norm == doctest::Approx(best).epsilon(1e-12));
        // reduced basis vectors can never beat the minimum
        for (int i = 0; i < n; ++i)
          CHECK(red.basis.columns.col(i).norm() >= r.norm - 1e-12);
      }
    }
  }
  SUBCASE("scaled lattice scales the minimizer") {
    const LatticeBasis basis = LatticeBasis::from_columns(mat2(3, 1, 1, 2));
    const LatticeBasis scaled = LatticeBasis::from_columns(Mat(3.0 * basis.columns));
    CHECK(shortest_vector_l2(scaled).norm ==
          doctest::Approx(3.0 * shortest_vector_l2(basis).norm).epsilon(1e-12));
  }
}

TEST_CASE("coefficient tie-break helpers") {
  VecZ a(3), b(3);
  a << -1, 0, 0;
  CHECK(canonical_sign(a)[0] == 1);
  a << 0, -2, 1;
  const VecZ c = canonical_sign(a);
  CHECK(c[1] == 2);
  CHECK(c[2] == -1);
  a << 1, 0, 0;
  b << 0, 1, 0;
  CHECK(colex_less(a, b));   // e1 precedes e2
  CHECK_FALSE(colex_less(b, a));
}
