#include "mellip/lattice.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>

#include "mellip/numeric.hpp"

namespace mellip {

namespace {

using Int128 = __int128;

// Bareiss fraction-free elimination; exact for integer Gram matrices at desk
// scale (entries bounded well below the 128-bit range).
Int128 bareiss_det(std::vector<std::vector<Int128>> m) {
  const int n = static_cast<int>(m.size());
  Int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) return 0;
      std::swap(m[k], m[pivot]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

Int128 integral_gram_det(const LatticeBasis& basis) {
  const int n = basis.dim();
  MatZ b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = std::llround(basis.columns(i, j));
  std::vector<std::vector<Int128>> gram(n, std::vector<Int128>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Int128 acc = 0;
      for (int k = 0; k < n; ++k)
        acc += static_cast<Int128>(b(k, i)) * static_cast<Int128>(b(k, j));
      gram[i][j] = acc;
    }
  return bareiss_det(std::move(gram));
}

struct GramSchmidt {
  Mat mu;       // unit lower triangular
  Vec sqnorms;  // ||b_i*||^2
};

GramSchmidt gram_schmidt(const Mat& b) {
  const int n = static_cast<int>(b.cols());
  Mat star = b;
  GramSchmidt gs{Mat::Identity(n, n), Vec::Zero(n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      gs.mu(i, j) = b.col(i).dot(star.col(j)) / gs.sqnorms[j];
      star.col(i) -= gs.mu(i, j) * star.col(j);
    }
    gs.sqnorms[i] = star.col(i).squaredNorm();
  }
  return gs;
}

// LLL on a generic column matrix; all column operations are mirrored on the
// transform. For integer bases the caller passes an exact integer matrix.
template <typename Matrix>
void lll_core(Matrix& b, MatZ& u, double delta) {
  const int n = static_cast<int>(b.cols());
  auto as_double = [&]() -> Mat {
    Mat m(b.rows(), b.cols());
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) m(i, j) = static_cast<double>(b(i, j));
    return m;
  };
  long long steps = 0;
  int k = 1;
  GramSchmidt gs = gram_schmidt(as_double());
  while (k < n) {
    if (++steps > 4'000'000)
      throw error(errc::cap_exceeded, "lll_reduce: step cap exceeded");
    for (int j = k - 1; j >= 0; --j) {
      const long long q = std::llround(gs.mu(k, j));
      if (q != 0) {
        b.col(k) -= q * b.col(j);
        u.col(k) -= q * u.col(j);
        gs = gram_schmidt(as_double());
      }
    }
    if (gs.sqnorms[k] >= (delta - gs.mu(k, k - 1) * gs.mu(k, k - 1)) * gs.sqnorms[k - 1]) {
      ++k;
    } else {
      b.col(k).swap(b.col(k - 1));
      u.col(k).swap(u.col(k - 1));
      gs = gram_schmidt(as_double());
      k = std::max(k - 1, 1);
    }
  }
}

}  // namespace

LatticeBasis LatticeBasis::from_columns(Mat columns) {
  if (columns.rows() != columns.cols() || columns.rows() < 1)
    throw error(errc::invalid_input, "lattice basis must be square full-rank");
  bool integral = true;
  for (int i = 0; i < columns.rows() && integral; ++i)
    for (int j = 0; j < columns.cols(); ++j) {
      const double v = columns(i, j);
      if (v != std::floor(v) || std::abs(v) > 9.0e15) {
        integral = false;
        break;
      }
    }
  LatticeBasis basis{std::move(columns), integral};
  if (basis.integral) {
    if (integral_gram_det(basis) == 0)
      throw error(errc::invalid_input, "lattice basis columns are dependent");
  } else {
    Eigen::FullPivLU<Mat> lu(basis.columns);
    if (!lu.isInvertible())
      throw error(errc::invalid_input, "lattice basis columns are dependent");
  }
  return basis;
}

double gram_determinant(const LatticeBasis& basis) {
  if (basis.integral) return static_cast<double>(integral_gram_det(basis));
  return (basis.columns.transpose() * basis.columns).determinant();
}

bool gram_determinant_equal(const LatticeBasis& a, const LatticeBasis& b) {
  if (a.integral && b.integral) return integral_gram_det(a) == integral_gram_det(b);
  const double da = gram_determinant(a);
  const double db = gram_determinant(b);
  return std::abs(da - db) <= 1e-9 * std::max({1.0, std::abs(da), std::abs(db)});
}

LllResult lll_reduce(const LatticeBasis& basis, double delta) {
  if (!(delta > 0.25) || !(delta < 1.0))
    throw error(errc::invalid_input, "lll delta must lie in (1/4, 1)");
  const int n = basis.dim();
  MatZ u = MatZ::Identity(n, n);
  if (n == 1) return {basis, u};
  if (basis.integral) {
    MatZ b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = std::llround(basis.columns(i, j));
    lll_core(b, u, delta);
    Mat out(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(i, j) = static_cast<double>(b(i, j));
    return {LatticeBasis{out, true}, u};
  }
  Mat b = basis.columns;
  lll_core(b, u, delta);
  return {LatticeBasis{b, false}, u};
}

bool is_lll_reduced(const LatticeBasis& basis, double delta) {
  const GramSchmidt gs = gram_schmidt(basis.columns);
  const int n = basis.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(gs.mu(i, j)) > 0.5 + 1e-9) return false;
  for (int k = 1; k < n; ++k)
    if (gs.sqnorms[k] <
        (delta - gs.mu(k, k - 1) * gs.mu(k, k - 1)) * gs.sqnorms[k - 1] - 1e-9)
      return false;
  return true;
}

EllipsoidEnumerator::EllipsoidEnumerator(const LatticeBasis& basis, const Ellipsoid& E)
    : basis_(basis), radius_(E.radius) {
  const int n = basis.dim();
  if (E.dim() != n)
    throw error(errc::invalid_input, "enumerate_in_ellipsoid: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Mat> es(E.shape);
  if (!(es.eigenvalues()(0) > 0.0))
    throw error(errc::invalid_input, "enumerate_in_ellipsoid: degenerate ellipsoid");
  shape_inv_ = es.operatorInverseSqrt() * es.operatorInverseSqrt();

  // whitened problem: ||R a - y||_2 <= radius with R upper triangular
  Eigen::HouseholderQR<Mat> qr(shape_inv_ * basis.columns);
  r_ = qr.matrixQR().triangularView<Eigen::Upper>();
  q_ = qr.householderQ();
  for (int i = 0; i < n; ++i)
    if (r_(i, i) < 0.0) {
      r_.row(i) = -r_.row(i);
      q_.col(i) = -q_.col(i);
    }
}

EnumerationResult EllipsoidEnumerator::enumerate(const Vec& center,
                                                 std::int64_t node_cap) const {
  const int n = basis_.dim();
  if (center.size() != n)
    throw error(errc::invalid_input, "enumerate_in_ellipsoid: dimension mismatch");
  const Vec y = q_.transpose() * (shape_inv_ * center);
  const double bound2 = radius_ * radius_ + 1e-12 * std::max(1.0, radius_ * radius_);

  EnumerationResult result{{}, {}, 0};
  VecZ a = VecZ::Zero(n);

  // depth-first over levels n-1 .. 0; `used` is the squared residual
  // contributed by the levels already fixed above
  auto dfs = [&](auto&& self, int level, double used) -> void {
    double proj = y[level];
    for (int j = level + 1; j < n; ++j) proj -= r_(level, j) * a[j];
    const double remaining = bound2 - used;
    if (remaining < 0.0) return;
    const double halfwidth = std::sqrt(remaining) / r_(level, level);
    const double mid = proj / r_(level, level);
    const long long lo = static_cast<long long>(std::ceil(mid - halfwidth));
    const long long hi = static_cast<long long>(std::floor(mid + halfwidth));
    for (long long ai = lo; ai <= hi; ++ai) {
      if (++result.nodes_visited > node_cap)
        throw error(errc::cap_exceeded, "enumerate_in_ellipsoid: node cap exceeded");
      const double diff = r_(level, level) * static_cast<double>(ai) - proj;
      const double res = used + diff * diff;
      if (res > bound2) continue;
      a[level] = ai;
      if (level == 0)
        result.coefficients.push_back(a);
      else
        self(self, level - 1, res);
    }
  };
  dfs(dfs, n - 1, 0.0);

  std::sort(result.coefficients.begin(), result.coefficients.end(),
            [n](const VecZ& lhs, const VecZ& rhs) {
              for (int i = 0; i < n; ++i)
                if (lhs[i] != rhs[i]) return lhs[i] < rhs[i];
              return false;
            });
  result.points.reserve(result.coefficients.size());
  for (const VecZ& coeff : result.coefficients)
    result.points.push_back(basis_.vector(coeff));
  return result;
}

EnumerationResult enumerate_in_ellipsoid(const LatticeBasis& basis, const Vec& center,
                                         const Ellipsoid& E, std::int64_t node_cap) {
  return EllipsoidEnumerator(basis, E).enumerate(center, node_cap);
}

VecZ canonical_sign(const VecZ& coeffs) {
  for (int i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] > 0) return coeffs;
    if (coeffs[i] < 0) return -coeffs;
  }
  return coeffs;
}

bool colex_less(const VecZ& a, const VecZ& b) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

bool tie_break_less(const VecZ& a, const VecZ& b) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    const long long aa = std::abs(a[i]);
    const long long ab = std::abs(b[i]);
    if (aa != ab) return aa < ab;
  }
  return colex_less(a, b);
}

ShortestVectorResult shortest_vector_l2(const LatticeBasis& basis, std::int64_t node_cap) {
  LllResult lll = lll_reduce(basis);
  double radius = lll.basis.columns.col(0).norm();
  for (int i = 1; i < lll.basis.dim(); ++i)
    radius = std::min(radius, lll.basis.columns.col(i).norm());

  const Ellipsoid ball{Mat::Identity(basis.dim(), basis.dim()), radius};
  EnumerationResult en =
      enumerate_in_ellipsoid(lll.basis, Vec::Zero(basis.dim()), ball, node_cap);

  bool found = false;
  double best_sq = 0.0;
  VecZ best_coeffs;
  for (const VecZ& c : en.coefficients) {
    if (c.isZero()) continue;
    // coefficients with respect to the caller's basis
    const VecZ orig = canonical_sign(lll.transform * c);
    const double sq = basis.vector(orig).squaredNorm();
    if (!found || sq < best_sq || (sq == best_sq && tie_break_less(orig, best_coeffs))) {
      found = true;
      best_sq = sq;
      best_coeffs = orig;
    }
  }
  if (!found)
    throw error(errc::invalid_input, "shortest_vector_l2: empty enumeration");
  return {basis.vector(best_coeffs), best_coeffs, std::sqrt(best_sq)};
}

}  // namespace mellip
