#pragma once

#include <sstream>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "svpqa/core.hpp"
#include "svpqa/lattice.hpp"

namespace svpqa {

/// N coordinates, each a spin-k system of dimension 2k+1. Basis states are
/// z-product states ordered with site 1 most significant and, within a site,
/// m running from k down to -k.
class RegisterShape {
 public:
  RegisterShape(int sites, int k);

  int sites() const { return sites_; }
  int k() const { return k_; }
  int site_dim() const { return 2 * k_ + 1; }
  Eigen::Index dim() const { return dim_; }

  /// Magnetizations (m_1, ..., m_N) of basis state `index`.
  CoeffVector magnetizations(Eigen::Index index) const;
  /// Inverse of magnetizations().
  Eigen::Index index_of(const CoeffVector& m) const;

  bool operator==(const RegisterShape&) const = default;

 private:
  int sites_;
  int k_;
  Eigen::Index dim_;
};

/// Dense operator on a register or a single site. A set Hermitian flag is a
/// checked claim: construction fails if max |M - M†| >= 1e-12.
template <typename Scalar>
class Operator {
 public:
  using MatrixType = Matrix<Scalar>;

  Operator() = default;
  Operator(MatrixType matrix, bool hermitian) : matrix_(std::move(matrix)), hermitian_(hermitian) {
    if (matrix_.rows() != matrix_.cols()) {
      throw Error(ErrorCategory::register_, "operator matrix must be square");
    }
    if (hermitian_) {
      const Real asym = max_abs_diff(matrix_, MatrixType(matrix_.adjoint()));
      if (!(asym < 1e-12)) {
        std::ostringstream os;
        os << "operator flagged Hermitian but max|M - M^dagger| = " << asym;
        throw Error(ErrorCategory::register_, os.str());
      }
    }
  }

  const MatrixType& matrix() const { return matrix_; }
  bool hermitian() const { return hermitian_; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  MatrixType matrix_;
  bool hermitian_ = false;
};

using RealOperator = Operator<Real>;
using ComplexOperator = Operator<Complex>;

/// Transverse-field amplitudes B_x^(i), one per site, all positive.
class FieldProfile {
 public:
  explicit FieldProfile(VectorXr bx);
  static FieldProfile uniform(int sites, Real bx);
  /// B_x^(1) = bx1 and B_x^(i≥2) = bx1 / ratio.
  static FieldProfile from_ratio(int sites, Real bx1, Real ratio);

  const VectorXr& bx() const { return bx_; }
  int sites() const { return static_cast<int>(bx_.size()); }
  Real operator[](int i) const { return bx_[i]; }

  /// True when B_x^(1) < min_{i≥2} B_x^(i) - 1e-9, which makes the first
  /// excited level of the driver nondegenerate.
  bool breaks_degeneracy() const;

 private:
  VectorXr bx_;
};

struct SpinMatrices {
  MatrixXr sx;
  MatrixXr sz;
};

/// Spin-k matrices in the m = k, ..., -k basis.
SpinMatrices spin_matrices(int k);

/// I ⊗ ... ⊗ op ⊗ ... ⊗ I with `op` at 1-based `site`; site 1 is leftmost.
template <typename Derived>
Matrix<typename Derived::Scalar> embed(const Eigen::MatrixBase<Derived>& op, int site,
                                       const RegisterShape& shape) {
  using Scalar = typename Derived::Scalar;
  if (site < 1 || site > shape.sites()) {
    std::ostringstream os;
    os << "site index " << site << " out of range 1.." << shape.sites();
    throw Error(ErrorCategory::register_, os.str());
  }
  if (op.rows() != shape.site_dim() || op.cols() != shape.site_dim()) {
    throw Error(ErrorCategory::register_, "site operator dimension does not match 2k+1");
  }
  Eigen::Index left = 1;
  for (int i = 1; i < site; ++i) left *= shape.site_dim();
  const Eigen::Index right = shape.dim() / (left * shape.site_dim());
  const Matrix<Scalar> inner = Eigen::kroneckerProduct(op.derived().eval(), Matrix<Scalar>::Identity(right, right));
  return Eigen::kroneckerProduct(Matrix<Scalar>::Identity(left, left), inner);
}

/// Σ_ij G_ij Sz^(i) Sz^(j).
RealOperator problem_hamiltonian(const GramMatrix& gram, const RegisterShape& shape);

/// Σ_i B_x^(i) · 2 Sx^(i).
RealOperator driver_hamiltonian(const FieldProfile& profile, const RegisterShape& shape);

/// (1 - s) H_D + s H_P.
template <typename Scalar>
Operator<Scalar> total_hamiltonian(Real s, const Operator<Scalar>& driver, const Operator<Scalar>& problem) {
  if (!(s >= 0.0 && s <= 1.0)) {
    std::ostringstream os;
    os << "interpolation parameter s = " << s << " outside [0, 1]";
    throw Error(ErrorCategory::register_, os.str());
  }
  if (driver.dim() != problem.dim()) throw Error(ErrorCategory::register_, "dimension mismatch between H_D and H_P");
  if (s == 0.0) return driver;
  if (s == 1.0) return problem;
  return Operator<Scalar>((1.0 - s) * driver.matrix() + s * problem.matrix(),
                          driver.hermitian() && problem.hermitian());
}

}  // namespace svpqa
