#include "svpqa/spectrum.hpp"

namespace svpqa {

SpectrumTrace trace_spectrum(const RealOperator& driver, const RealOperator& problem, int n_points, int levels) {
  if (n_points < 2) throw Error(ErrorCategory::spectrum, "trace needs n_points >= 2");
  if (levels < 1 || levels > driver.dim()) {
    std::ostringstream os;
    os << "levels = " << levels << " must lie in 1.." << driver.dim();
    throw Error(ErrorCategory::spectrum, os.str());
  }
  SpectrumTrace trace;
  trace.s_grid.resize(n_points);
  trace.levels.resize(n_points, levels);
  Eigen::SelfAdjointEigenSolver<MatrixXr> es(driver.dim());
  for (int p = 0; p < n_points; ++p) {
    const Real s = (p == n_points - 1) ? 1.0 : static_cast<Real>(p) / (n_points - 1);
    trace.s_grid[p] = s;
    es.compute(total_hamiltonian(s, driver, problem).matrix(), Eigen::EigenvaluesOnly);
    trace.levels.row(p) = es.eigenvalues().head(levels).transpose();
  }
  return trace;
}

GapResult min_gap(const SpectrumTrace& trace, int i, int j) {
  if (i < 0 || j <= i || j >= trace.level_count()) {
    std::ostringstream os;
    os << "min_gap needs 0 <= i < j < " << trace.level_count() << ", got i=" << i << " j=" << j;
    throw Error(ErrorCategory::spectrum, os.str());
  }
  const VectorXr gaps = trace.levels.col(j) - trace.levels.col(i);
  Eigen::Index at = 0;
  const Real gap = gaps.minCoeff(&at);
  return {gap, trace.s_grid[at]};
}

}  // namespace svpqa
