#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "adsim/state.hpp"

namespace adsim {

/// Tabulated real potential P(0..N-1). The problem Hamiltonian is
/// diag(values); evolution only ever needs pointwise values, so the
/// polynomial (or other) origin of the table is not kept symbolically.
struct Potential {
  Eigen::VectorXd values;
  std::string label;

  Eigen::Index dim() const { return values.size(); }
};

/// P(x) = -1 at x_min, 0 elsewhere.
Potential delta_potential(Eigen::Index x_min, Eigen::Index dim);

/// P(x) = sum_k coefficients[k] * x^k, tabulated over 0..dim-1.
Potential poly_potential(const Eigen::VectorXd& coefficients, Eigen::Index dim);

/// P(x) + offset for all x.
Potential shift_potential(const Potential& p, double offset);

/// diag(P) applied to a state: amplitudes scaled pointwise by P(x).
/// The result is generally not normalized.
State apply_potential(const Potential& p, const Eigen::Ref<const State>& s);

enum class HiKind { Hopping, CoherentLike, Diagonal, SeededRandomHermitian };

const char* to_string(HiKind kind);
/// Parses the config-file spelling ("hopping", "coherent-like", "diagonal",
/// "seeded-random-hermitian"). Throws std::invalid_argument on unknown names.
HiKind hi_kind_from_string(const std::string& name);

struct HiParams {
  double kappa = 1.0;  // hopping amplitude, > 0
  double alpha = 1.0;  // coherent-like displacement, real
};

/// An initial Hamiltonian together with its ground eigenpair. Hermitian by
/// construction; the eigenpair comes from the dense Hermitian solver, so
/// ||matrix * ground_state - ground_energy * ground_state|| <= 1e-9 always
/// holds for built instances.
struct InitialHamiltonian {
  Eigen::MatrixXcd matrix;
  State ground_state;
  double ground_energy = 0.0;
  double ground_gap = 0.0;  // first excited minus ground energy, >= 0
  HiKind kind = HiKind::Hopping;
  /// Set when the built ground state carries noticeable weight at the top
  /// of the truncated basis (coherent-like kind only; see build_hi).
  bool truncation_warning = false;

  Eigen::Index dim() const { return matrix.rows(); }
};

/// Builds one of four initial-Hamiltonian families:
///   Hopping               tridiagonal, zero diagonal, off-diagonal -kappa
///   CoherentLike          (a^dag - alpha)(a - alpha) with the truncated
///                         lowering operator a|x> = sqrt(x)|x-1>; ground
///                         state concentrates near small x
///   Diagonal              diag(0, 1, 2, ...); commutes with any potential
///   SeededRandomHermitian Gaussian Hermitian ensemble drawn from the seed,
///                         shifted so the ground energy is 0
/// The seed only matters for SeededRandomHermitian. Throws
/// std::invalid_argument for dim < 2 or non-positive kappa.
InitialHamiltonian build_hi(HiKind kind, const HiParams& params, Eigen::Index dim, std::uint64_t seed = 1);

enum class ScheduleVariant {
  Full,      // (1 - t/T) H_I + (t/T) diag(P)
  Reference  // (1 - t/T) H_I, the comparison dynamics
};

/// A time-dependent Hamiltonian path over [0, total_time].
struct Schedule {
  InitialHamiltonian initial;
  Potential potential;
  double total_time = 1.0;
  ScheduleVariant variant = ScheduleVariant::Full;

  Eigen::Index dim() const { return initial.dim(); }
};

/// Throws std::invalid_argument unless 0 < total_time and dims agree
/// (Reference schedules ignore the potential and may leave it empty).
Schedule make_schedule(InitialHamiltonian initial, Potential potential, double total_time,
                       ScheduleVariant variant = ScheduleVariant::Full);

/// The instantaneous Hamiltonian at time t. Throws std::out_of_range for
/// t outside [0, total_time].
Eigen::MatrixXcd interpolate(const Schedule& sch, double t);

}  // namespace adsim
