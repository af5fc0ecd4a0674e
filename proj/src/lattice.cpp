#include "svpqa/lattice.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace svpqa {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCategory::lattice, what); }

// Gram determinant normalized by the product of squared column norms; equals
// 1 for orthogonal columns and 0 for dependent ones.
void require_independent(const MatrixXr& g) {
  Real scale = 1.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    if (!(g(i, i) > 0.0)) fail("linearly dependent basis: zero-length basis vector");
    scale *= g(i, i);
  }
  const Real normalized = g.determinant() / scale;
  if (!(normalized > 1e-12)) {
    std::ostringstream os;
    os << "linearly dependent basis: normalized Gram determinant " << normalized << " <= 1e-12";
    fail(os.str());
  }
}

}  // namespace

LatticeBasis LatticeBasis::from_columns(MatrixXr columns) {
  if (columns.cols() < 1) fail("basis must have at least one vector");
  if (columns.rows() < columns.cols()) fail("basis needs ambient dimension d >= N");
  if (!columns.allFinite()) fail("basis entries must be finite");
  require_independent(columns.transpose() * columns);
  LatticeBasis basis;
  basis.columns_ = std::move(columns);
  return basis;
}

LatticeBasis LatticeBasis::polar(Real b1, Real b2, Real theta) {
  if (!(b1 > 0.0) || !(b2 > 0.0)) fail("polar basis requires b1 > 0 and b2 > 0");
  if (!(theta > 0.0 && theta < M_PI)) fail("polar basis requires 0 < theta < pi");
  LatticeBasis basis;
  basis.columns_.resize(2, 2);
  basis.columns_ << b1, b2 * std::cos(theta), 0.0, b2 * std::sin(theta);
  basis.polar_ = true;
  basis.b1_ = b1;
  basis.b2_ = b2;
  basis.theta_ = theta;
  return basis;
}

GramMatrix::GramMatrix(MatrixXr g) : g_(std::move(g)) {
  if (g_.rows() < 1 || g_.rows() != g_.cols()) fail("Gram matrix must be square and nonempty");
  if (!g_.allFinite()) fail("Gram matrix entries must be finite");
  if (g_ != g_.transpose()) fail("Gram matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<MatrixXr> es(g_, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().minCoeff() > 0.0)) fail("Gram matrix must be positive definite");
  require_independent(g_);
}

bool GramMatrix::is_diagonal() const {
  for (Eigen::Index i = 0; i < g_.rows(); ++i)
    for (Eigen::Index j = 0; j < g_.cols(); ++j)
      if (i != j && g_(i, j) != 0.0) return false;
  return true;
}

GramMatrix gram_from_basis(const LatticeBasis& basis) {
  if (basis.is_polar()) {
    const Real off = basis.b1() * basis.b2() * std::cos(basis.theta());
    MatrixXr g(2, 2);
    g << basis.b1() * basis.b1(), off, off, basis.b2() * basis.b2();
    return GramMatrix(std::move(g));
  }
  const MatrixXr& b = basis.columns();
  MatrixXr g = b.transpose() * b;
  // The product is symmetric up to rounding; mirror the upper triangle.
  g.triangularView<Eigen::StrictlyLower>() = g.transpose().triangularView<Eigen::StrictlyLower>();
  return GramMatrix(std::move(g));
}

Real norm_sq(const GramMatrix& gram, const CoeffVector& x) {
  if (x.size() != gram.dimension()) {
    std::ostringstream os;
    os << "dimension mismatch: coefficient vector has " << x.size() << " entries, Gram matrix is "
       << gram.dimension() << "x" << gram.dimension();
    fail(os.str());
  }
  const VectorXr xr = x.cast<Real>();
  return xr.dot(gram.matrix() * xr);
}

SvpResult brute_force_svp(const GramMatrix& gram, int k) {
  if (k < 1) fail("coefficient bound k must be >= 1");
  const int n = gram.dimension();

  // Odometer over the box, x_1 most significant, each digit running k..-k.
  std::vector<std::pair<Real, CoeffVector>> candidates;
  CoeffVector x = CoeffVector::Constant(n, k);
  Real best = std::numeric_limits<Real>::infinity();
  for (;;) {
    if (!x.isZero()) {
      const Real v = norm_sq(gram, x);
      if (v < best) best = v;
      candidates.emplace_back(v, x);
    }
    int i = n - 1;
    while (i >= 0 && x[i] == -k) {
      x[i] = k;
      --i;
    }
    if (i < 0) break;
    --x[i];
  }

  SvpResult result;
  result.min_norm_sq = best;
  for (auto& [v, c] : candidates) {
    if (std::abs(v - best) <= kTieTolerance * std::abs(best)) result.solutions.push_back(std::move(c));
  }
  return result;
}

}  // namespace svpqa
