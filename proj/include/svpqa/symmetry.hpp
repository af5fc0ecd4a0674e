#pragma once

#include <string>
#include <vector>

#include "svpqa/dynamics.hpp"
#include "svpqa/register.hpp"
#include "svpqa/states.hpp"

namespace svpqa {

/// Sy = (S+ - S-) / 2i for spin k, m = k..-k basis.
MatrixXc spin_y(int k);

/// P = e^{-iπ Sx} on one site: eigenvalue (-1)^m on |S_x = m⟩. Real,
/// symmetric, involutive.
MatrixXr site_parity(int k);

/// site_parity embedded at 1-based `site`.
RealOperator parity_operator(int site, const RegisterShape& shape);

/// max_ij |(AB - BA)_ij|.
template <typename Scalar>
Real commutator_norm(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw Error(ErrorCategory::symmetry, "commutator: dimension mismatch");
  }
  const Matrix<Scalar> c = a * b - b * a;
  return c.size() == 0 ? 0.0 : c.cwiseAbs().maxCoeff();
}

template <typename Scalar>
Real commutator_norm(const Operator<Scalar>& a, const Operator<Scalar>& b) {
  return commutator_norm(a.matrix(), b.matrix());
}

struct Sector {
  enum class Kind { plus, minus, mixed };
  Kind kind;
  Real weight_plus;
  Real weight_minus;

  /// +1, -1, or 0 for mixed.
  int sign() const { return kind == Kind::plus ? 1 : kind == Kind::minus ? -1 : 0; }
};

inline constexpr Real kSectorTolerance = 1e-10;

/// Weights ‖(I ± P)ψ/2‖²; definite when the opposite weight is below 1e-10.
Sector sector_of(const StateVector& psi, const RealOperator& parity);

struct SectorWeight {
  std::vector<int> signs;  // one per conserved site, +1 or -1
  Real weight;             // ‖Π_σ ψ0‖²
  Real solution_overlap;   // ‖Π_σ Π_sol‖_F
};

struct BlockingReport {
  bool blocked = false;
  std::vector<int> conserved_sites;  // 1-based
  std::vector<SectorWeight> sectors;
  Real projection_norm = 0;  // ‖Π_accessible Π_sol‖_F
  SvpResult svp;

  std::string text() const;
};

/// Determines the per-site parities conserved by H(s) for every s and
/// whether the sector content of ψ0 can reach any solution state.
BlockingReport blocked(const GramMatrix& gram, const RegisterShape& shape, const FieldProfile& profile,
                       const StateVector& initial);

}  // namespace svpqa
