#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "adsim/hamiltonian.hpp"
#include "adsim/state.hpp"

namespace adsim {

/// Raised when a propagation violates its own validity checks (per-step
/// unitarity, or the reference run drifting off the initial ground state).
/// Signals integrator misconfiguration, not a bad argument.
class PropagationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-step integration control. The actual step divides total_time
/// evenly and is rounded so the step count is a multiple of sample_stride,
/// keeping stored samples uniformly spaced; the realized step never
/// exceeds base_step.
struct StepControl {
  double base_step = 1e-2;  // must be <= total_time / 10
  int sample_stride = 10;   // store every k-th step, >= 1
  double tolerance = 1e-9;  // per-step unitarity / reference-drift allowance
};

/// A propagation record: states sampled along 0..T plus norm bookkeeping.
struct Trajectory {
  Schedule schedule;
  std::vector<double> times;   // sample times, times.front() == 0, back() == T
  std::vector<State> states;   // aligned with times; states[0] is the initial state
  std::vector<double> norms;   // per-sample state norm
  double norm_drift = 0.0;     // max over all steps of | ||psi|| - 1 |
  long step_count = 0;

  Eigen::Index dim() const { return schedule.dim(); }
  const State& final_state() const { return states.back(); }
  bool valid() const { return norm_drift <= 1e-9; }
};

struct GroundState {
  double energy = 0.0;
  State vector;
  double gap = 0.0;        // lambda_1 - lambda_0; reported as 0 when degenerate
  bool degenerate = false; // gap below 1e-12
};

/// Lowest eigenpair of a Hermitian matrix (checked to 1e-12) plus the gap
/// to the next eigenvalue. Phase convention: the largest-magnitude
/// component of the eigenvector is made real positive, ties broken by
/// lowest index.
GroundState ground_state_of(const Eigen::MatrixXcd& matrix);

/// Integrates d/dt psi = -i H(t) psi with the exponential-midpoint rule:
/// each step applies exp(-i H(t_mid) dt) through the eigendecomposition of
/// the midpoint Hamiltonian, so every step is unitary to rounding.
/// Real-symmetric and tridiagonal structure of the schedule is detected and
/// exploited; the result is the same decomposition either way.
Trajectory propagate(const Schedule& sch, const Eigen::Ref<const State>& initial, const StepControl& ctl);

/// Propagates the Reference schedule (1 - t/T) H_I starting from the
/// built-in ground state. Because the initial state is an eigenvector of
/// every H_0(t), the exact solution stays on it up to a time-varying
/// phase; this routine checks that at every sample (alignment within
/// 10 * ctl.tolerance, accumulated phase against the analytic integral
/// -lambda_min (t - t^2/2T) within ctl.tolerance) and throws
/// PropagationError on drift.
Trajectory propagate_reference(const Schedule& sch, const StepControl& ctl);

/// Plain product-form propagator used as a cross-check oracle: forms the
/// full step unitary exp(-i H(t_mid) dt) as a dense complex matrix every
/// step, with no structure dispatch. Requires dt <= T/100. Intended for
/// small dimensions.
State brute_force_propagator(const Schedule& sch, const Eigen::Ref<const State>& initial, double dt);

}  // namespace adsim
