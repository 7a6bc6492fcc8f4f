#pragma once

#include <Eigen/Dense>
#include <vector>

#include "adsim/evolve.hpp"
#include "adsim/hamiltonian.hpp"
#include "adsim/state.hpp"

namespace adsim {

/// The comparison-bound record for one (potential, H_I, T) instance:
/// the final deviation ||g(T) - g_0(T)|| never exceeds
/// T * ||diag(P) g_I||, whatever the schedule does in between.
struct BoundReport {
  /// |<x_min|g_I>|; only defined when the potential is a unit delta well
  /// (NaN otherwise). For a delta well it coincides with hp_gi_norm.
  double overlap;
  double hp_gi_norm = 0.0;  // ||diag(P) g_I||
  double bound = 0.0;       // total_time * hp_gi_norm
  double total_time = 0.0;

  // Filled by attach_deviation.
  double deviation;          // raw ||g(T) - g_0(T)||, no phase alignment
  double aligned_deviation;  // min over a global phase; informational only
  double slack = 1e-6;
  bool satisfied = false;    // deviation <= bound + slack
};

/// Computes the bound-side fields (overlap, hp_gi_norm, bound); deviation
/// fields are left NaN until attach_deviation is called.
BoundReport deviation_bound(const Potential& p, const InitialHamiltonian& hi, double total_time);

/// Final-time deviation between the full run and the reference run,
/// without phase alignment (the bound is phase-sensitive as derived).
/// Both trajectories must share H_I, T, dimension and sample times.
double deviation(const Trajectory& full, const Trajectory& ref);

/// Same comparison after optimal global-phase alignment; carries no bound
/// claim, reported for interpretability.
double aligned_deviation(const Trajectory& full, const Trajectory& ref);

/// Fills report.deviation / aligned_deviation / satisfied from the two runs.
void attach_deviation(BoundReport& report, const Trajectory& full, const Trajectory& ref,
                      double slack = 1e-6);

/// Pointwise differential-inequality check along stored samples: the
/// central-difference derivative of ||g(t) - g_0(t)|| should not exceed
/// ||diag(P) g_0(t)|| beyond finite-difference error, and the source norm
/// should be time-constant (g_0 never leaves the g_I ray).
struct GronwallReport {
  std::vector<double> times;        // interior sample times
  std::vector<double> derivative;   // central-difference d/dt ||g - g_0||
  std::vector<double> source_norm;  // ||diag(P) g_0(t)|| at interior samples
  double max_violation = 0.0;       // max over samples of max(0, derivative - source_norm)
  double source_constancy = 0.0;    // max deviation of ||diag(P) g_0(t)|| from its initial value
};

/// Requires at least 20 stored samples. Throws std::invalid_argument
/// otherwise or on misaligned trajectories; throws PropagationError when
/// the source norm fails to be time-constant within 1e-8.
GronwallReport gronwall_check(const Trajectory& full, const Trajectory& ref, const Potential& p);

/// |<x_min|final>|^2.
double success_probability(const Eigen::Ref<const State>& final_state, Eigen::Index x_min);

/// Two lowest eigenvalues of the interpolated Hamiltonian at equally
/// spaced times; min_gap is the smallest gap found and argmin_time where
/// it occurred.
struct GapProfile {
  std::vector<double> times;
  std::vector<double> gaps;
  double min_gap = 0.0;
  double argmin_time = 0.0;
};

/// Requires samples >= 2 and a Full-variant schedule.
GapProfile gap_profile(const Schedule& sch, int samples);

struct ClassicalResult {
  Eigen::Index x_star = 0;
  double value = 0.0;
};

/// Exhaustive scan over 0..upper_bound-1, lowest index wins ties.
/// The bounded-search baseline the quantum schedule is compared against.
ClassicalResult classical_minimize(const Potential& p, Eigen::Index upper_bound);

}  // namespace adsim
