#pragma once

#include <Eigen/Dense>
#include <complex>

namespace adsim {

using Complex = std::complex<double>;

/// A vector of probability amplitudes over the truncated number basis
/// {|0>, ..., |N-1>}. Plain dense storage; values are immutable by
/// convention once built (all operations return fresh vectors).
using State = Eigen::VectorXcd;

/// Tolerance for calling a freshly constructed state normalized.
inline constexpr double kNormalizationTol = 1e-12;
/// Looser allowance for states coming out of a propagation run.
inline constexpr double kEvolvedNormalizationTol = 1e-9;

/// |x> in an N-dimensional truncation. Throws std::out_of_range if x >= dim.
State basis_state(Eigen::Index x, Eigen::Index dim);

/// <a|b>, conjugate-linear in the first argument.
/// Throws std::invalid_argument on dimension mismatch.
Complex inner(const Eigen::Ref<const State>& a, const Eigen::Ref<const State>& b);

/// Euclidean norm, sqrt(inner(a, a)).
double norm(const Eigen::Ref<const State>& a);

bool is_normalized(const Eigen::Ref<const State>& a, double tol = kNormalizationTol);

/// Returns e^{i theta} * a with theta chosen so that inner(result, b) is
/// real and nonnegative; this choice minimizes ||e^{i theta} a - b|| over
/// theta. Throws std::domain_error when inner(a, b) vanishes (phase
/// undefined).
State phase_align(const Eigen::Ref<const State>& a, const Eigen::Ref<const State>& b);

/// Probability weight at or above the cutoff index: sum_{x >= cutoff} |a_x|^2.
/// Throws std::out_of_range if cutoff > dim.
double tail_mass(const Eigen::Ref<const State>& a, Eigen::Index cutoff);

}  // namespace adsim
