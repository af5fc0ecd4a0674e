#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace svpqa {

using Real = double;
using Complex = std::complex<double>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXr = Matrix<Real>;
using MatrixXc = Matrix<Complex>;
using VectorXr = Vector<Real>;
using VectorXc = Vector<Complex>;

/// Every failure raised by the library carries the module it came from so
/// the CLI can report categorized, module-qualified messages.
enum class ErrorCategory {
  lattice,
  register_,
  states,
  dynamics,
  spectrum,
  symmetry,
  experiments,
  config,
};

inline const char* category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::lattice: return "lattice";
    case ErrorCategory::register_: return "register";
    case ErrorCategory::states: return "states";
    case ErrorCategory::dynamics: return "dynamics";
    case ErrorCategory::spectrum: return "spectrum";
    case ErrorCategory::symmetry: return "symmetry";
    case ErrorCategory::experiments: return "experiments";
    case ErrorCategory::config: return "config";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(std::string(category_name(category)) + ": " + what),
        category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

/// max_ij |A_ij - B_ij|
template <typename DerivedA, typename DerivedB>
Real max_abs_diff(const Eigen::MatrixBase<DerivedA>& a,
                  const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace svpqa
