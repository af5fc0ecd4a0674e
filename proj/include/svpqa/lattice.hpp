#pragma once

#include <vector>

#include "svpqa/core.hpp"

namespace svpqa {

/// Integer coefficient vector x of a lattice point B·x.
using CoeffVector = Eigen::VectorXi;

/// Lattice basis given either as explicit columns (d×N, d ≥ N) or, for N=2,
/// by the two norms and the angle between the basis vectors.
class LatticeBasis {
 public:
  static LatticeBasis from_columns(MatrixXr columns);
  static LatticeBasis polar(Real b1, Real b2, Real theta);

  int dimension() const { return static_cast<int>(columns_.cols()); }
  const MatrixXr& columns() const { return columns_; }

  bool is_polar() const { return polar_; }
  Real b1() const { return b1_; }
  Real b2() const { return b2_; }
  Real theta() const { return theta_; }

 private:
  LatticeBasis() = default;

  MatrixXr columns_;
  bool polar_ = false;
  Real b1_ = 0, b2_ = 0, theta_ = 0;
};

/// Symmetric positive-definite matrix of basis inner products.
class GramMatrix {
 public:
  /// Symmetrizes nothing: throws if `g` is not exactly symmetric or not
  /// positive definite.
  explicit GramMatrix(MatrixXr g);

  int dimension() const { return static_cast<int>(g_.rows()); }
  const MatrixXr& matrix() const { return g_; }
  Real operator()(int i, int j) const { return g_(i, j); }

  bool is_diagonal() const;

 private:
  MatrixXr g_;
};

struct SvpResult {
  Real min_norm_sq = 0;
  std::vector<CoeffVector> solutions;  // lexicographically ordered, descending x_1 first
  int degeneracy() const { return static_cast<int>(solutions.size()); }
};

/// Relative tolerance under which two squared norms count as tied.
inline constexpr Real kTieTolerance = 1e-10;

GramMatrix gram_from_basis(const LatticeBasis& basis);

/// xᵀ G x.
Real norm_sq(const GramMatrix& gram, const CoeffVector& x);

/// Exhaustive search over the nonzero vectors of [-k, k]^N.
SvpResult brute_force_svp(const GramMatrix& gram, int k);

}  // namespace svpqa
