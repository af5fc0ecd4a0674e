#include "svpqa/register.hpp"

#include <cmath>
#include <limits>

namespace svpqa {

namespace {
[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCategory::register_, what); }
}  // namespace

RegisterShape::RegisterShape(int sites, int k) : sites_(sites), k_(k), dim_(1) {
  if (sites < 1) fail("register needs at least one site");
  if (k < 1) fail("coefficient bound k must be >= 1");
  for (int i = 0; i < sites; ++i) {
    if (dim_ > std::numeric_limits<Eigen::Index>::max() / site_dim()) fail("register dimension overflows");
    dim_ *= site_dim();
  }
}

CoeffVector RegisterShape::magnetizations(Eigen::Index index) const {
  if (index < 0 || index >= dim_) fail("basis index out of range");
  CoeffVector m(sites_);
  for (int i = sites_ - 1; i >= 0; --i) {
    m[i] = k_ - static_cast<int>(index % site_dim());
    index /= site_dim();
  }
  return m;
}

Eigen::Index RegisterShape::index_of(const CoeffVector& m) const {
  if (m.size() != sites_) fail("magnetization vector length does not match the number of sites");
  Eigen::Index index = 0;
  for (int i = 0; i < sites_; ++i) {
    if (std::abs(m[i]) > k_) fail("magnetization outside [-k, k]");
    index = index * site_dim() + (k_ - m[i]);
  }
  return index;
}

FieldProfile::FieldProfile(VectorXr bx) : bx_(std::move(bx)) {
  if (bx_.size() < 1) fail("field profile must have at least one entry");
  for (Eigen::Index i = 0; i < bx_.size(); ++i) {
    if (!(bx_[i] > 0.0) || !std::isfinite(bx_[i])) {
      std::ostringstream os;
      os << "field amplitude B_x^(" << i + 1 << ") = " << bx_[i] << " must be positive";
      fail(os.str());
    }
  }
}

FieldProfile FieldProfile::uniform(int sites, Real bx) { return FieldProfile(VectorXr::Constant(sites, bx)); }

FieldProfile FieldProfile::from_ratio(int sites, Real bx1, Real ratio) {
  if (!(ratio > 0.0)) fail("field ratio must be positive");
  VectorXr bx = VectorXr::Constant(sites, bx1 / ratio);
  bx[0] = bx1;
  return FieldProfile(std::move(bx));
}

bool FieldProfile::breaks_degeneracy() const {
  if (bx_.size() == 1) return true;
  return bx_[0] < bx_.tail(bx_.size() - 1).minCoeff() - 1e-9;
}

SpinMatrices spin_matrices(int k) {
  if (k < 1) fail("spin k must be >= 1");
  const int d = 2 * k + 1;
  SpinMatrices s{MatrixXr::Zero(d, d), MatrixXr::Zero(d, d)};
  for (int a = 0; a < d; ++a) s.sz(a, a) = k - a;
  // <m+1|Sx|m> = ½ sqrt(k(k+1) - m(m+1)); index a holds m = k - a.
  for (int a = 1; a < d; ++a) {
    const Real m = k - a;
    const Real element = 0.5 * std::sqrt(static_cast<Real>(k) * (k + 1) - m * (m + 1));
    s.sx(a - 1, a) = element;
    s.sx(a, a - 1) = element;
  }
  return s;
}

RealOperator problem_hamiltonian(const GramMatrix& gram, const RegisterShape& shape) {
  if (gram.dimension() != shape.sites()) {
    std::ostringstream os;
    os << "dimension mismatch: Gram matrix is " << gram.dimension() << "x" << gram.dimension() << ", register has "
       << shape.sites() << " sites";
    fail(os.str());
  }
  const SpinMatrices spin = spin_matrices(shape.k());
  std::vector<MatrixXr> sz;
  for (int i = 1; i <= shape.sites(); ++i) sz.push_back(embed(spin.sz, i, shape));

  MatrixXr h = MatrixXr::Zero(shape.dim(), shape.dim());
  for (int i = 0; i < shape.sites(); ++i)
    for (int j = 0; j < shape.sites(); ++j)
      if (gram(i, j) != 0.0) h.noalias() += gram(i, j) * (sz[i] * sz[j]);
  return RealOperator(std::move(h), true);
}

RealOperator driver_hamiltonian(const FieldProfile& profile, const RegisterShape& shape) {
  if (profile.sites() != shape.sites()) fail("field profile length does not match the number of sites");
  const SpinMatrices spin = spin_matrices(shape.k());
  MatrixXr h = MatrixXr::Zero(shape.dim(), shape.dim());
  for (int i = 1; i <= shape.sites(); ++i) h += (2.0 * profile[i - 1]) * embed(spin.sx, i, shape);
  return RealOperator(std::move(h), true);
}

}  // namespace svpqa
