#pragma once

// Closed forms used as independent oracles, kept free of the library's own
// computation paths on purpose.

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "adsim/state.hpp"

namespace oracles {

// Open hopping chain (off-diagonal -kappa, zero diagonal):
// eigenvalues -2 kappa cos(k pi / (N+1)) for k = 1..N,
// eigenvectors sqrt(2/(N+1)) sin(k pi (x+1) / (N+1)).
inline double hopping_eigenvalue(int k, Eigen::Index dim, double kappa) {
  return -2.0 * kappa * std::cos(k * M_PI / static_cast<double>(dim + 1));
}

inline adsim::State hopping_eigenvector(int k, Eigen::Index dim) {
  adsim::State v(dim);
  const double c = std::sqrt(2.0 / static_cast<double>(dim + 1));
  for (Eigen::Index x = 0; x < dim; ++x)
    v[x] = c * std::sin(k * M_PI * static_cast<double>(x + 1) / static_cast<double>(dim + 1));
  return v;
}

// Truncated coherent state, amplitudes proportional to alpha^x / sqrt(x!),
// renormalized over 0..dim-1. Annihilated by (a - alpha) exactly, so it is
// the ground state of the truncated (a^dag - alpha)(a - alpha) up to weight
// beyond the truncation; use only where alpha^dim / sqrt(dim!) is
// negligible (say dim >= 32 for |alpha| <= 1).
inline adsim::State coherent_amplitudes(Eigen::Index dim, double alpha) {
  Eigen::VectorXd w(dim);
  w[0] = 1.0;
  for (Eigen::Index x = 1; x < dim; ++x)
    w[x] = w[x - 1] * alpha / std::sqrt(static_cast<double>(x));
  w /= w.norm();
  return w.cast<adsim::Complex>();
}

// Evolution under H(t) = (1 - t/T) diag(d) + (t/T) diag(p): all H(t)
// commute, so each amplitude just picks up the phase
// -integral_0^T [(1-s) d_x + s p_x] dt = -T (d_x + p_x) / 2.
inline adsim::State commuting_final(const Eigen::VectorXd& d, const Eigen::VectorXd& p,
                                    const adsim::State& initial, double total_time) {
  adsim::State out(initial.size());
  for (Eigen::Index x = 0; x < initial.size(); ++x)
    out[x] = std::polar(1.0, -total_time * (d[x] + p[x]) / 2.0) * initial[x];
  return out;
}

inline adsim::State random_state(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  adsim::State v(dim);
  for (Eigen::Index x = 0; x < dim; ++x) v[x] = adsim::Complex(gauss(rng), gauss(rng));
  v /= v.norm();
  return v;
}

}  // namespace oracles
