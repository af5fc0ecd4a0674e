#include "svpqa/dynamics.hpp"

#include <cmath>

namespace svpqa {

namespace {
[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCategory::dynamics, what); }
}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::gs: return "gs";
    case Mode::ex: return "ex";
    case Mode::sc: return "sc";
  }
  return "?";
}

Mode parse_mode(const std::string& text) {
  if (text == "gs") return Mode::gs;
  if (text == "ex") return Mode::ex;
  if (text == "sc") return Mode::sc;
  throw Error(ErrorCategory::config, "unknown mode '" + text + "' (expected gs, ex or sc)");
}

Schedule::Schedule(Real total_time, int slices) : T(total_time), steps(slices) {
  if (!(total_time > 0.0) || !std::isfinite(total_time)) fail("annealing time T must be positive");
  if (slices < 1) fail("schedule needs at least one slice");
}

StateVector evolve(const RealOperator& driver, const RealOperator& problem, const StateVector& initial,
                   const Schedule& schedule, const SliceObserver& observer) {
  if (driver.dim() != problem.dim() || driver.dim() != initial.dim()) {
    fail("evolve: operator and state dimensions disagree");
  }
  if (!driver.hermitian() || !problem.hermitian()) fail("evolve: H_D and H_P must be Hermitian");
  const Eigen::Index dim = initial.dim();
  const Real dt = schedule.dt();
  VectorXc psi = initial.amplitudes();
  VectorXc coeffs(dim);
  MatrixXr h(dim, dim);
  Eigen::SelfAdjointEigenSolver<MatrixXr> es(dim);
  for (int n = 0; n < schedule.steps; ++n) {
    const Real s = (n + 0.5) / schedule.steps;
    h.noalias() = (1.0 - s) * driver.matrix() + s * problem.matrix();
    es.compute(h);
    if (es.info() != Eigen::Success) fail("slice eigendecomposition did not converge");
    const MatrixXr& v = es.eigenvectors();
    coeffs.noalias() = v.transpose() * psi;
    for (Eigen::Index a = 0; a < dim; ++a) coeffs[a] *= std::polar(1.0, -es.eigenvalues()[a] * dt);
    psi.noalias() = v * coeffs;
    if (observer) observer(n, psi);
  }
  const Real drift = std::abs(psi.norm() - 1.0);
  if (drift > 1e-6) {
    std::ostringstream os;
    os << "integration failure: norm drift " << drift << " exceeds 1e-6; increase steps";
    fail(os.str());
  }
  return StateVector(initial.shape(), std::move(psi), 1e-6);
}

StateVector initial_state(Mode mode, const FieldProfile& profile, const RegisterShape& shape) {
  switch (mode) {
    case Mode::gs: return driver_ground(profile, shape);
    case Mode::ex: return driver_first_excited(profile, shape);
    case Mode::sc:
      if (!profile.breaks_degeneracy()) {
        fail("mode sc requires B_x^(1) strictly smaller than every other B_x^(i)");
      }
      return spin_coherent(shape, profile);
  }
  fail("unknown mode");
}

Real success_probability(const Populations& populations, const SvpResult& svp) {
  Real p = 0.0;
  for (const CoeffVector& x : svp.solutions) p += populations.at(x);
  return p;
}

AnnealOutcome anneal(const AnnealInputs& inputs) {
  const RegisterShape shape(inputs.gram.dimension(), inputs.k);
  const RealOperator hd = driver_hamiltonian(inputs.profile, shape);
  const RealOperator hp = problem_hamiltonian(inputs.gram, shape);
  const StateVector psi0 = initial_state(inputs.mode, inputs.profile, shape);
  StateVector psi = evolve(hd, hp, psi0, Schedule(inputs.T, inputs.steps));
  Populations pops = z_populations(psi);
  SvpResult svp = brute_force_svp(inputs.gram, inputs.k);
  const Real success = success_probability(pops, svp);
  return AnnealOutcome{std::move(psi), std::move(pops), std::move(svp), success, 1.0 - success, inputs};
}

int default_steps(Real T) { return std::max(1000, static_cast<int>(std::ceil(20.0 * T))); }

ConvergedOutcome converge_steps(AnnealInputs inputs, Real tolerance, std::optional<int> start_steps) {
  if (!(tolerance > 0.0)) fail("convergence tolerance must be positive");
  inputs.steps = start_steps.value_or(default_steps(inputs.T));
  AnnealOutcome previous = anneal(inputs);
  Real change = 0.0;
  for (int doubling = 1; doubling <= kMaxDoublings; ++doubling) {
    inputs.steps *= 2;
    AnnealOutcome refined = anneal(inputs);
    change = std::abs(refined.failure_prob - previous.failure_prob);
    if (change < tolerance) return ConvergedOutcome{std::move(refined), inputs.steps, change};
    previous = std::move(refined);
  }
  std::ostringstream os;
  os << "steps did not converge after " << kMaxDoublings << " doublings (reached " << inputs.steps
     << " slices, last |delta failure| = " << change << " vs tolerance " << tolerance << ")";
  fail(os.str());
}

}  // namespace svpqa
