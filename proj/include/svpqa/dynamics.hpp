#pragma once

#include <functional>
#include <optional>
#include <string>

#include "svpqa/lattice.hpp"
#include "svpqa/register.hpp"
#include "svpqa/states.hpp"

namespace svpqa {

/// Search protocol: ground-state search, excited-state search from the
/// driver's first excited state, or excited-state search from the
/// spin-coherent product state.
enum class Mode { gs, ex, sc };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

/// Linear schedule s = t/T sliced into `steps` uniform intervals.
struct Schedule {
  Real T;
  int steps;

  Schedule(Real total_time, int slices);
  Real dt() const { return T / steps; }
};

/// Midpoint piecewise-constant propagation: slice n applies
/// exp(-i H((n + ½)/steps) Δt) computed from the slice's eigendecomposition.
/// The final norm is not renormalized; drift above 1e-6 is an error.
/// `observer`, when set, sees the amplitudes after every slice.
using SliceObserver = std::function<void(int slice, const VectorXc& amplitudes)>;

StateVector evolve(const RealOperator& driver, const RealOperator& problem, const StateVector& initial,
                   const Schedule& schedule, const SliceObserver& observer = {});

struct AnnealInputs {
  Mode mode;
  GramMatrix gram;
  int k;
  FieldProfile profile;
  Real T;
  int steps;
};

struct AnnealOutcome {
  StateVector final_state;
  Populations populations;
  SvpResult svp;
  Real success_prob;
  Real failure_prob;
  AnnealInputs inputs;
};

StateVector initial_state(Mode mode, const FieldProfile& profile, const RegisterShape& shape);

AnnealOutcome anneal(const AnnealInputs& inputs);

/// Σ of populations over the solution set.
Real success_probability(const Populations& populations, const SvpResult& svp);

/// Default starting slice count max(1000, ceil(20 T)).
int default_steps(Real T);

struct ConvergedOutcome {
  AnnealOutcome outcome;
  int steps_used;
  Real last_change;  // |Δ failure_prob| of the accepted doubling
};

inline constexpr Real kDefaultConvergenceTolerance = 1e-8;
inline constexpr int kMaxDoublings = 8;

/// Doubles the slice count from `start_steps` (default_steps(T) when unset)
/// until failure_prob changes by less than `tolerance`.
ConvergedOutcome converge_steps(AnnealInputs inputs, Real tolerance = kDefaultConvergenceTolerance,
                                std::optional<int> start_steps = std::nullopt);

}  // namespace svpqa
