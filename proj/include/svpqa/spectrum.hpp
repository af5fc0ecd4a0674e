#pragma once

#include <vector>

#include "svpqa/register.hpp"

namespace svpqa {

template <typename Scalar>
struct EigenDecomposition {
  VectorXr values;         // ascending
  Matrix<Scalar> vectors;  // orthonormal columns
};

/// Eigendecomposition of a Hermitian operator.
template <typename Scalar>
EigenDecomposition<Scalar> eigh(const Operator<Scalar>& h) {
  if (!h.hermitian()) throw Error(ErrorCategory::spectrum, "eigh requires an operator flagged Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(h.matrix());
  if (es.info() != Eigen::Success) throw Error(ErrorCategory::spectrum, "eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

/// Lowest levels of H(s) on a uniform s grid spanning [0, 1].
struct SpectrumTrace {
  std::vector<Real> s_grid;
  MatrixXr levels;  // row p holds the ascending levels at s_grid[p]

  int level_count() const { return static_cast<int>(levels.cols()); }
};

inline constexpr int kDefaultSpectrumPoints = 201;
inline constexpr int kDefaultSpectrumLevels = 8;

SpectrumTrace trace_spectrum(const RealOperator& driver, const RealOperator& problem, int n_points, int levels);

struct GapResult {
  Real gap;
  Real s_at_min;
};

/// min over the grid of levels[j] - levels[i], i < j.
GapResult min_gap(const SpectrumTrace& trace, int i, int j);

}  // namespace svpqa
