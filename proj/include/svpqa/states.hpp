#pragma once

#include "svpqa/register.hpp"

namespace svpqa {

/// Unit-norm amplitude vector over the register's z-product basis.
class StateVector {
 public:
  /// Throws unless | ‖amplitudes‖ - 1 | < tolerance.
  StateVector(RegisterShape shape, VectorXc amplitudes, Real tolerance = 1e-12);

  static StateVector basis_state(const RegisterShape& shape, const CoeffVector& m);

  const RegisterShape& shape() const { return shape_; }
  const VectorXc& amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  Real norm() const { return amplitudes_.norm(); }

 private:
  RegisterShape shape_;
  VectorXc amplitudes_;
};

/// z-basis measurement distribution, indexed like the register basis.
struct Populations {
  RegisterShape shape;
  VectorXr probabilities;

  Real at(const CoeffVector& m) const { return probabilities[shape.index_of(m)]; }
};

/// ⊗_i |S_x^(i) = -k⟩.
StateVector driver_ground(const FieldProfile& profile, const RegisterShape& shape);

/// |S_x^(1) = -(k-1)⟩ ⊗_{j≥2} |S_x^(j) = -k⟩; requires B_x^(1) strictly smallest.
StateVector driver_first_excited(const FieldProfile& profile, const RegisterShape& shape);

/// Site 1 in the image of ⊗_p (√ε|+⟩ + √(1-ε)|−⟩) with ε = 1/(2k-2), the
/// remaining sites in |S_x = -k⟩. Requires k ≥ 2.
StateVector spin_coherent(const RegisterShape& shape, const FieldProfile& profile);

/// Single-site amplitudes (m = k..-k) of the symmetric 2k-qubit product
/// ⊗_p (a|↑⟩ + b|↓⟩).
VectorXr symmetric_product_site(int k, Real up, Real down);

/// ⟨a|b⟩.
Complex overlap(const StateVector& a, const StateVector& b);

Populations z_populations(const StateVector& psi);

/// Multiplies by a global phase so the first nonzero amplitude is real positive.
VectorXc fix_global_phase(VectorXc amplitudes);

}  // namespace svpqa
