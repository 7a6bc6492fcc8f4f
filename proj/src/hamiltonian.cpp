#include "adsim/hamiltonian.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "adsim/evolve.hpp"

namespace adsim {

namespace {

void require_dim(Eigen::Index dim) {
  if (dim < 2) throw std::invalid_argument("dim must be >= 2, got " + std::to_string(dim));
}

}  // namespace

Potential delta_potential(Eigen::Index x_min, Eigen::Index dim) {
  require_dim(dim);
  if (x_min < 0 || x_min >= dim)
    throw std::out_of_range("delta_potential: x_min " + std::to_string(x_min) +
                            " out of range for dim " + std::to_string(dim));
  Potential p;
  p.values = Eigen::VectorXd::Zero(dim);
  p.values[x_min] = -1.0;
  p.label = "delta(x_min=" + std::to_string(x_min) + ")";
  return p;
}

Potential poly_potential(const Eigen::VectorXd& coefficients, Eigen::Index dim) {
  require_dim(dim);
  if (coefficients.size() == 0) throw std::invalid_argument("poly_potential: no coefficients");
  Potential p;
  p.values.resize(dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    double acc = 0.0;  // Horner
    for (Eigen::Index k = coefficients.size() - 1; k >= 0; --k)
      acc = acc * static_cast<double>(x) + coefficients[k];
    p.values[x] = acc;
  }
  p.label = "poly(degree=" + std::to_string(coefficients.size() - 1) + ")";
  return p;
}

Potential shift_potential(const Potential& p, double offset) {
  Potential out;
  out.values = p.values.array() + offset;
  out.label = p.label + "+" + std::to_string(offset);
  return out;
}

State apply_potential(const Potential& p, const Eigen::Ref<const State>& s) {
  if (p.dim() != s.size())
    throw std::invalid_argument("apply_potential: dimension mismatch (" + std::to_string(p.dim()) +
                                " vs " + std::to_string(s.size()) + ")");
  return p.values.cast<Complex>().cwiseProduct(s);
}

const char* to_string(HiKind kind) {
  switch (kind) {
    case HiKind::Hopping: return "hopping";
    case HiKind::CoherentLike: return "coherent-like";
    case HiKind::Diagonal: return "diagonal";
    case HiKind::SeededRandomHermitian: return "seeded-random-hermitian";
  }
  return "?";
}

HiKind hi_kind_from_string(const std::string& name) {
  if (name == "hopping") return HiKind::Hopping;
  if (name == "coherent-like") return HiKind::CoherentLike;
  if (name == "diagonal") return HiKind::Diagonal;
  if (name == "seeded-random-hermitian") return HiKind::SeededRandomHermitian;
  throw std::invalid_argument(
      "unknown initial-Hamiltonian kind '" + name +
      "' (expected hopping | coherent-like | diagonal | seeded-random-hermitian)");
}

namespace {

Eigen::MatrixXd hopping_matrix(Eigen::Index dim, double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("hopping: kappa must be > 0");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i + 1 < dim; ++i) {
    m(i, i + 1) = -kappa;
    m(i + 1, i) = -kappa;
  }
  return m;
}

// (a^dag - alpha)(a - alpha) = diag(x) - alpha (a + a^dag) + alpha^2 I
// with the truncated lowering operator a|x> = sqrt(x)|x-1>.
Eigen::MatrixXd coherent_like_matrix(Eigen::Index dim, double alpha) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) m(x, x) = static_cast<double>(x) + alpha * alpha;
  for (Eigen::Index x = 1; x < dim; ++x) {
    const double v = -alpha * std::sqrt(static_cast<double>(x));
    m(x - 1, x) = v;
    m(x, x - 1) = v;
  }
  return m;
}

Eigen::MatrixXcd random_hermitian_matrix(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Entry scale 1/sqrt(dim) keeps the spectral radius near 2 for any dim.
  std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(static_cast<double>(dim)));
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::MatrixXcd h = 0.5 * (g + g.adjoint());
  h.diagonal() = h.diagonal().real().cast<Complex>();  // exact Hermiticity on the diagonal
  return h;
}

}  // namespace

InitialHamiltonian build_hi(HiKind kind, const HiParams& params, Eigen::Index dim, std::uint64_t seed) {
  require_dim(dim);
  InitialHamiltonian hi;
  hi.kind = kind;
  switch (kind) {
    case HiKind::Hopping:
      hi.matrix = hopping_matrix(dim, params.kappa).cast<Complex>();
      break;
    case HiKind::CoherentLike:
      hi.matrix = coherent_like_matrix(dim, params.alpha).cast<Complex>();
      break;
    case HiKind::Diagonal: {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
      for (Eigen::Index x = 0; x < dim; ++x) m(x, x) = static_cast<double>(x);
      hi.matrix = m.cast<Complex>();
      break;
    }
    case HiKind::SeededRandomHermitian:
      hi.matrix = random_hermitian_matrix(dim, seed);
      break;
  }

  GroundState ground = ground_state_of(hi.matrix);
  if (kind == HiKind::SeededRandomHermitian) {
    // Shift so the ground energy sits at zero.
    hi.matrix.diagonal().array() -= Complex(ground.energy, 0.0);
    ground.energy = 0.0;
  }
  hi.ground_state = std::move(ground.vector);
  hi.ground_energy = ground.energy;
  hi.ground_gap = ground.gap;

  if (kind == HiKind::CoherentLike) {
    // The truncated lowering operator distorts the top of the basis; flag
    // builds whose ground state actually reaches up there.
    hi.truncation_warning = tail_mass(hi.ground_state, (3 * dim) / 4) >= 1e-6;
  }
  return hi;
}

Schedule make_schedule(InitialHamiltonian initial, Potential potential, double total_time,
                       ScheduleVariant variant) {
  if (!(total_time > 0.0) || !std::isfinite(total_time))
    throw std::invalid_argument("schedule: total_time must be positive and finite");
  if (variant == ScheduleVariant::Full && initial.dim() != potential.dim())
    throw std::invalid_argument("schedule: dimension mismatch between H_I (" +
                                std::to_string(initial.dim()) + ") and potential (" +
                                std::to_string(potential.dim()) + ")");
  Schedule sch;
  sch.initial = std::move(initial);
  sch.potential = std::move(potential);
  sch.total_time = total_time;
  sch.variant = variant;
  return sch;
}

Eigen::MatrixXcd interpolate(const Schedule& sch, double t) {
  if (t < 0.0 || t > sch.total_time)
    throw std::out_of_range("interpolate: t = " + std::to_string(t) + " outside [0, " +
                            std::to_string(sch.total_time) + "]");
  const double s = t / sch.total_time;
  Eigen::MatrixXcd h = (1.0 - s) * sch.initial.matrix;
  if (sch.variant == ScheduleVariant::Full)
    h.diagonal() += (s * sch.potential.values).cast<Complex>();
  return h;
}

}  // namespace adsim
