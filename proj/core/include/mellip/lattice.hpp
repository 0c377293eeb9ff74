#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mellip/ellipsoid.hpp"

namespace mellip {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using MatZ = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using VecZ = Eigen::Matrix<long long, Eigen::Dynamic, 1>;

// Full-rank lattice basis, one generator per column. Integer bases are
// flagged and all basis updates on them stay in exact integer arithmetic;
// floating point appears only in Gram-Schmidt decisions and geometry.
struct LatticeBasis {
  Mat columns;
  bool integral;

  static LatticeBasis from_columns(Mat columns);

  int dim() const { return static_cast<int>(columns.rows()); }
  Vec vector(const VecZ& coeffs) const { return columns * coeffs.cast<double>(); }
};

// Exact Gram determinant comparison: integer Bareiss elimination when both
// bases are integral, 1e-9 relative comparison otherwise.
bool gram_determinant_equal(const LatticeBasis& a, const LatticeBasis& b);
double gram_determinant(const LatticeBasis& basis);

struct LllResult {
  LatticeBasis basis;
  MatZ transform;  // unimodular U with reduced.columns = input.columns * U
};

// Textbook LLL with parameter delta (default 0.99): size reduction
// |mu_ij| <= 1/2 plus the Lovasz condition on consecutive vectors.
LllResult lll_reduce(const LatticeBasis& basis, double delta = 0.99);

// True when the basis satisfies the LLL conditions (from its fp
// Gram-Schmidt data, tolerance 1e-9).
bool is_lll_reduced(const LatticeBasis& basis, double delta = 0.99);

// All lattice points in the closed ellipsoid centered at `center`:
// {v : ||shape^{-1}(v - center)||_2 <= radius}, by Fincke-Pohst
// branch-and-bound. Points whose squared distance exceeds radius^2 by at
// most 1e-12 (relative) are kept. Coefficients are reported with respect to
// the given basis, in ascending lexicographic order.
struct EnumerationResult {
  std::vector<VecZ> coefficients;
  std::vector<Vec> points;
  std::int64_t nodes_visited;
};

EnumerationResult enumerate_in_ellipsoid(const LatticeBasis& basis, const Vec& center,
                                         const Ellipsoid& E,
                                         std::int64_t node_cap = 100'000'000);

// Same search with the whitening and QR factor prepared once; used when many
// translates of one ellipsoid are enumerated against one basis.
class EllipsoidEnumerator {
 public:
  EllipsoidEnumerator(const LatticeBasis& basis, const Ellipsoid& E);

  EnumerationResult enumerate(const Vec& center, std::int64_t node_cap) const;

 private:
  const LatticeBasis& basis_;
  Mat shape_inv_;
  Mat r_;
  Mat q_;
  double radius_;
};

// Shortest nonzero lattice vector in the Euclidean norm, via LLL followed by
// enumeration at the shortest reduced basis vector's length. Ties resolve on
// input-basis coefficients, sign-normalized so the first nonzero entry is
// positive, by tie_break_less (on the integer lattice with the max norm this
// picks e_1).
struct ShortestVectorResult {
  Vec vector;
  VecZ coefficients;
  double norm;
};

ShortestVectorResult shortest_vector_l2(const LatticeBasis& basis,
                                        std::int64_t node_cap = 100'000'000);

// Sign-normalize so the first nonzero coefficient is positive.
VecZ canonical_sign(const VecZ& coeffs);
// Compare from the last coefficient downward.
bool colex_less(const VecZ& a, const VecZ& b);
// Deterministic preference among tied minimizers: colexicographic on the
// absolute coefficients, then colexicographic on the signed ones.
bool tie_break_less(const VecZ& a, const VecZ& b);

}  // namespace mellip
