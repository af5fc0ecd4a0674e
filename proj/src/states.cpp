#include "svpqa/states.hpp"

#include <cmath>

namespace svpqa {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCategory::states, what); }

Real binomial(int n, int r) {
  Real c = 1.0;
  for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

VectorXc product_over_sites(const RegisterShape& shape, const VectorXr& first, const VectorXr& rest) {
  VectorXr amps = first;
  for (int i = 2; i <= shape.sites(); ++i) {
    VectorXr next = Eigen::kroneckerProduct(amps, rest);
    amps = std::move(next);
  }
  return fix_global_phase(amps.cast<Complex>());
}

}  // namespace

StateVector::StateVector(RegisterShape shape, VectorXc amplitudes, Real tolerance)
    : shape_(shape), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != shape_.dim()) fail("amplitude vector length does not match the register dimension");
  const Real n = amplitudes_.norm();
  if (!(std::abs(n - 1.0) < tolerance)) {
    std::ostringstream os;
    os << "state is not normalized: norm = " << n;
    fail(os.str());
  }
}

StateVector StateVector::basis_state(const RegisterShape& shape, const CoeffVector& m) {
  VectorXc amps = VectorXc::Zero(shape.dim());
  amps[shape.index_of(m)] = 1.0;
  return StateVector(shape, std::move(amps));
}

VectorXc fix_global_phase(VectorXc amplitudes) {
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
    const Real mag = std::abs(amplitudes[i]);
    if (mag > 1e-14) {
      amplitudes *= std::conj(amplitudes[i]) / mag;
      amplitudes[i] = mag;
      break;
    }
  }
  return amplitudes;
}

VectorXr symmetric_product_site(int k, Real up, Real down) {
  const int d = 2 * k + 1;
  VectorXr site(d);
  for (int a = 0; a < d; ++a) {
    const int n_up = 2 * k - a;  // m = k - a
    site[a] = std::sqrt(binomial(2 * k, n_up)) * std::pow(up, n_up) * std::pow(down, 2 * k - n_up);
  }
  return site;
}

namespace {

// |−⟩ = (|↑⟩ - |↓⟩)/√2 on every qubit.
VectorXr lowest_sx_site(int k) { return symmetric_product_site(k, M_SQRT1_2, -M_SQRT1_2); }

}  // namespace

StateVector driver_ground(const FieldProfile& profile, const RegisterShape& shape) {
  if (profile.sites() != shape.sites()) fail("field profile length does not match the number of sites");
  const VectorXr site = lowest_sx_site(shape.k());
  return StateVector(shape, product_over_sites(shape, site, site));
}

StateVector driver_first_excited(const FieldProfile& profile, const RegisterShape& shape) {
  if (profile.sites() != shape.sites()) fail("field profile length does not match the number of sites");
  if (!profile.breaks_degeneracy()) {
    fail("degenerate first excited level: B_x^(1) must be strictly smaller than every other B_x^(i)");
  }
  const int k = shape.k();
  const VectorXr ground = lowest_sx_site(k);
  // W state: (1/√2k) Σ_p σ_z^(p) |−...−⟩ = (2/√2k) Sz |S_x = -k⟩.
  VectorXr w = spin_matrices(k).sz * ground;
  w.normalize();
  StateVector psi(shape, product_over_sites(shape, w, ground));

  const RealOperator hd = driver_hamiltonian(profile, shape);
  const Real e1 = -2.0 * k * profile.bx().sum() + 2.0 * profile[0];
  const Real residual = (hd.matrix() * psi.amplitudes() - e1 * psi.amplitudes()).norm();
  if (!(residual < 1e-9)) {
    std::ostringstream os;
    os << "first excited driver state failed eigen-residual check: " << residual;
    fail(os.str());
  }
  return psi;
}

StateVector spin_coherent(const RegisterShape& shape, const FieldProfile& profile) {
  if (profile.sites() != shape.sites()) fail("field profile length does not match the number of sites");
  const int k = shape.k();
  if (k < 2) fail("spin-coherent state needs k >= 2 (epsilon = 1/(2k-2) is undefined at k = 1)");
  const Real eps = 1.0 / (2.0 * k - 2.0);
  const Real plus = std::sqrt(eps);
  const Real minus = std::sqrt(1.0 - eps);
  // √ε|+⟩ + √(1-ε)|−⟩ in the z basis.
  const VectorXr site1 = symmetric_product_site(k, (plus + minus) * M_SQRT1_2, (plus - minus) * M_SQRT1_2);
  return StateVector(shape, product_over_sites(shape, site1, lowest_sx_site(k)));
}

Complex overlap(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) fail("overlap: dimension mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

Populations z_populations(const StateVector& psi) {
  return Populations{psi.shape(), psi.amplitudes().cwiseAbs2()};
}

}  // namespace svpqa
