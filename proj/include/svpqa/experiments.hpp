#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "svpqa/dynamics.hpp"
#include "svpqa/spectrum.hpp"

namespace svpqa {

/// How many slices an anneal uses. `fixed` always runs `steps`; `converge`
/// searches at default_steps(T) and reports the optimum after converge_steps.
struct StepsPolicy {
  enum class Kind { fixed, converge };
  Kind kind = Kind::converge;
  int steps = 0;
  Real rel_tol = kDefaultConvergenceTolerance;

  int search_steps(Real T) const { return kind == Kind::fixed ? steps : default_steps(T); }
  bool operator==(const StepsPolicy&) const = default;
};

struct ExperimentConfig {
  std::vector<Mode> modes;

  // Lattice: polar (b1, b2, theta) or an explicit Gram matrix.
  std::optional<Real> b1, b2, theta;
  std::optional<MatrixXr> gram;

  int k = 2;
  Real bx_ratio = 0.5;        // B_x^(1) / B_x^(2) for ex and sc; gs always uses 1
  std::optional<Real> bx1;    // unset: optimize over [bx_lo, bx_hi]
  Real bx_lo = 0.2;
  Real bx_hi = 4.0;

  Real T = 100.0;                                              // anneal, spectrum, ex/sc in sweep-theta
  std::vector<Real> T_grid{5, 10, 20, 50, 100, 200};           // sweep-t
  std::vector<Real> gs_T_grid{1, 2, 5, 10, 20, 50, 100, 200};  // gs T optimization in sweep-theta
  std::vector<Real> theta_grid;                                // sweep-theta; empty: default grid

  StepsPolicy steps;
  int n_points = kDefaultSpectrumPoints;
  int levels = kDefaultSpectrumLevels;
  std::string out = "out";

  bool operator==(const ExperimentConfig&) const;

  GramMatrix gram_matrix() const;
  /// Gram matrix of the polar lattice with the angle replaced.
  GramMatrix gram_at(Real angle) const;
  Real field_ratio(Mode mode) const { return mode == Mode::gs ? 1.0 : bx_ratio; }
  std::vector<Real> thetas() const;
};

/// 25 uniform angles over [π/18, 17π/18].
std::vector<Real> default_theta_grid();

struct SweepRecord {
  Mode mode;
  Real theta, b1, b2;
  int k;
  Real T, bx1, bx2;
  int steps;
  Real failure_prob, success_prob;
  bool blocked;
};

struct OptimizeResult {
  Real bx1;
  Real failure;
};

inline constexpr Real kBxGridStep = 0.05;
inline constexpr Real kBxTolerance = 1e-3;

/// Grid search with spacing 0.05 over [lo, hi] (endpoints included), then
/// golden-section refinement to |Δbx1| < 1e-3 inside the neighbouring grid
/// cells of the best point. Grid points are evaluated on the worker pool.
OptimizeResult optimize_bx1(const std::function<Real(Real)>& failure_at, Real lo, Real hi);

/// Anneal objective at fixed slice count: failure_prob as a function of bx1.
std::function<Real(Real)> anneal_objective(Mode mode, const GramMatrix& gram, int k, Real ratio, Real T, int steps);

/// One full record: picks bx1 (fixed or optimized), evaluates with the
/// steps policy, and classifies symmetry blocking.
SweepRecord run_point(const ExperimentConfig& config, Mode mode, const GramMatrix& gram, Real T);

struct PointRun {
  SweepRecord record;
  AnnealOutcome outcome;
};

/// run_point that also keeps the evaluated anneal.
PointRun evaluate_point(const ExperimentConfig& config, Mode mode, const GramMatrix& gram, Real T);

std::vector<SweepRecord> sweep_T(const ExperimentConfig& config);
std::vector<SweepRecord> sweep_theta(const ExperimentConfig& config);

struct SpectrumRun {
  SpectrumTrace trace;
  Real bx1, bx2;
};

/// Spectrum of H(s) for the configured lattice with the excited-search field
/// profile; bx1 is optimized for mode ex at config.T unless fixed.
SpectrumRun run_spectrum(const ExperimentConfig& config);

/// Deterministic (mode, theta, T) ordering.
void sort_records(std::vector<SweepRecord>& records);

inline constexpr const char* kSweepHeader = "mode,theta,b1,b2,k,T,bx1,bx2,steps,failure_prob,success_prob,blocked";

std::string format_real(Real value);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);
void write_spectrum_csv(std::ostream& os, const SpectrumTrace& trace);
void write_populations_csv(std::ostream& os, const Populations& populations);

/// Worker count: SVPQA_THREADS when set to a positive integer, otherwise the
/// hardware concurrency.
int worker_count();

/// Calls fn(i) for i in [0, n) on up to worker_count() threads.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace svpqa
