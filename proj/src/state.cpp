#include "adsim/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace adsim {

State basis_state(Eigen::Index x, Eigen::Index dim) {
  if (dim < 2) throw std::invalid_argument("basis_state: dim must be >= 2, got " + std::to_string(dim));
  if (x < 0 || x >= dim)
    throw std::out_of_range("basis_state: index " + std::to_string(x) + " out of range for dim " +
                            std::to_string(dim));
  State s = State::Zero(dim);
  s[x] = Complex(1.0, 0.0);
  return s;
}

Complex inner(const Eigen::Ref<const State>& a, const Eigen::Ref<const State>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("inner: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  return a.dot(b);  // Eigen's dot conjugates the first factor
}

double norm(const Eigen::Ref<const State>& a) { return a.norm(); }

bool is_normalized(const Eigen::Ref<const State>& a, double tol) {
  return std::abs(a.squaredNorm() - 1.0) <= tol;
}

State phase_align(const Eigen::Ref<const State>& a, const Eigen::Ref<const State>& b) {
  const Complex overlap = inner(a, b);
  if (std::abs(overlap) <= 1e-15 * a.norm() * b.norm())
    throw std::domain_error("phase_align: states are orthogonal, phase undefined");
  // inner(e^{i t} a, b) = e^{-i t} <a|b>; t = arg<a|b> makes it |<a|b>|.
  const Complex phase = std::polar(1.0, std::arg(overlap));
  return phase * a;
}

double tail_mass(const Eigen::Ref<const State>& a, Eigen::Index cutoff) {
  if (cutoff < 0 || cutoff > a.size())
    throw std::out_of_range("tail_mass: cutoff " + std::to_string(cutoff) + " out of range for dim " +
                            std::to_string(a.size()));
  return a.tail(a.size() - cutoff).squaredNorm();
}

}  // namespace adsim
