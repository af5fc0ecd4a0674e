#include "svpqa/symmetry.hpp"

#include <cmath>
#include <iomanip>

namespace svpqa {

MatrixXc spin_y(int k) {
  const SpinMatrices s = spin_matrices(k);
  const int d = 2 * k + 1;
  MatrixXc sy = MatrixXc::Zero(d, d);
  // Sx holds ½(S+ + S-); S+ sits above the diagonal in the m-descending basis.
  for (int a = 1; a < d; ++a) {
    const Real element = s.sx(a - 1, a);
    sy(a - 1, a) = Complex(0.0, -element);
    sy(a, a - 1) = Complex(0.0, element);
  }
  return sy;
}

MatrixXr site_parity(int k) {
  const SpinMatrices s = spin_matrices(k);
  Eigen::SelfAdjointEigenSolver<MatrixXr> es(s.sx);
  const int d = 2 * k + 1;
  VectorXr signs(d);
  for (int a = 0; a < d; ++a) {
    const int m = static_cast<int>(std::lround(es.eigenvalues()[a]));
    signs[a] = (m % 2 == 0) ? 1.0 : -1.0;
  }
  MatrixXr p = es.eigenvectors() * signs.asDiagonal() * es.eigenvectors().transpose();
  // Symmetric up to rounding; the entries are exactly representable in exact arithmetic.
  p = 0.5 * (p + p.transpose()).eval();
  return p;
}

RealOperator parity_operator(int site, const RegisterShape& shape) {
  return RealOperator(embed(site_parity(shape.k()), site, shape), true);
}

Sector sector_of(const StateVector& psi, const RealOperator& parity) {
  if (parity.dim() != psi.dim()) throw Error(ErrorCategory::symmetry, "sector_of: dimension mismatch");
  const VectorXc p_psi = parity.matrix() * psi.amplitudes();
  const Real w_plus = (0.5 * (psi.amplitudes() + p_psi)).squaredNorm();
  const Real w_minus = (0.5 * (psi.amplitudes() - p_psi)).squaredNorm();
  Sector::Kind kind = Sector::Kind::mixed;
  if (w_minus < kSectorTolerance) kind = Sector::Kind::plus;
  else if (w_plus < kSectorTolerance) kind = Sector::Kind::minus;
  return Sector{kind, w_plus, w_minus};
}

BlockingReport blocked(const GramMatrix& gram, const RegisterShape& shape, const FieldProfile& profile,
                       const StateVector& initial) {
  if (initial.dim() != shape.dim()) throw Error(ErrorCategory::symmetry, "blocked: state dimension mismatch");
  const RealOperator hp = problem_hamiltonian(gram, shape);
  const RealOperator hd = driver_hamiltonian(profile, shape);

  BlockingReport report;
  std::vector<MatrixXr> parities;
  for (int site = 1; site <= shape.sites(); ++site) {
    RealOperator p = parity_operator(site, shape);
    if (commutator_norm(p, hp) < kSectorTolerance && commutator_norm(p, hd) < kSectorTolerance) {
      report.conserved_sites.push_back(site);
      parities.push_back(p.matrix());
    }
  }

  report.svp = brute_force_svp(gram, shape.k());
  MatrixXr solution_basis = MatrixXr::Zero(shape.dim(), report.svp.degeneracy());
  for (int c = 0; c < report.svp.degeneracy(); ++c) solution_basis(shape.index_of(report.svp.solutions[c]), c) = 1.0;

  const int n_conserved = static_cast<int>(parities.size());
  const MatrixXr identity = MatrixXr::Identity(shape.dim(), shape.dim());
  MatrixXr accessible = MatrixXr::Zero(shape.dim(), shape.dim());
  for (int mask = 0; mask < (1 << n_conserved); ++mask) {
    SectorWeight sector;
    MatrixXr projector = identity;
    for (int c = 0; c < n_conserved; ++c) {
      const int sign = (mask >> c) & 1 ? -1 : 1;
      sector.signs.push_back(sign);
      projector = (projector * (0.5 * (identity + sign * parities[c]))).eval();
    }
    sector.weight = (projector * initial.amplitudes()).squaredNorm();
    sector.solution_overlap = (projector * solution_basis).norm();
    if (sector.weight > kSectorTolerance) accessible += projector;
    report.sectors.push_back(std::move(sector));
  }
  report.projection_norm = (accessible * solution_basis).norm();
  report.blocked = report.projection_norm < kSectorTolerance;
  return report;
}

std::string BlockingReport::text() const {
  std::ostringstream os;
  os << "blocked=" << (blocked ? "true" : "false") << "\n";
  os << "conserved_parities=";
  if (conserved_sites.empty()) os << "none";
  for (std::size_t i = 0; i < conserved_sites.size(); ++i) os << (i ? "," : "") << "P" << conserved_sites[i];
  os << "\n";
  os << "solutions=" << svp.degeneracy() << " min_norm_sq=" << std::setprecision(12) << svp.min_norm_sq << "\n";
  os << "sector";
  for (int site : conserved_sites) os << "\tP" << site;
  os << "\tinitial_weight\tsolution_overlap\n";
  for (const SectorWeight& s : sectors) {
    os << "sector";
    for (int sign : s.signs) os << "\t" << (sign > 0 ? "+1" : "-1");
    os << "\t" << std::setprecision(12) << s.weight << "\t" << s.solution_overlap << "\n";
  }
  os << "projection_norm=" << std::setprecision(12) << projection_norm << "\n";
  return os.str();
}

}  // namespace svpqa
