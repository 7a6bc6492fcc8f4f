#include "adsim/evolve.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <string>

namespace adsim {

namespace {

constexpr double kDegeneracyTol = 1e-12;

enum class Structure { TridiagonalReal, DenseReal, DenseComplex };

// Exact-zero probes: the built families produce exact zeros, so structure
// detection is deterministic. Anything else falls back to the dense paths.
Structure detect_structure(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (m(i, j).imag() != 0.0) return Structure::DenseComplex;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if ((i > j + 1 || j > i + 1) && m(i, j).real() != 0.0) return Structure::DenseReal;
  return Structure::TridiagonalReal;
}

struct EigenBasis {
  bool real = true;
  Eigen::MatrixXd u_real;
  Eigen::MatrixXcd u_cplx;
  Eigen::VectorXd evals;
};

EigenBasis decompose_real(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw PropagationError("eigensolver failed on a real matrix");
  return {true, es.eigenvectors(), {}, es.eigenvalues()};
}

EigenBasis decompose_tridiagonal(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw PropagationError("eigensolver failed on a tridiagonal matrix");
  return {true, es.eigenvectors(), {}, es.eigenvalues()};
}

EigenBasis decompose_complex(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) throw PropagationError("eigensolver failed on a complex matrix");
  return {false, {}, es.eigenvectors(), es.eigenvalues()};
}

Eigen::VectorXcd unit_phases(const Eigen::VectorXd& evals, double dt) {
  Eigen::VectorXcd ph(evals.size());
  for (Eigen::Index i = 0; i < evals.size(); ++i) ph[i] = std::polar(1.0, -evals[i] * dt);
  return ph;
}

// U * diag(phases) * U^dag * psi without forming the step unitary.
State apply_step(const EigenBasis& basis, const Eigen::VectorXcd& phases, const State& psi) {
  if (basis.real) {
    Eigen::VectorXd cr = basis.u_real.transpose() * psi.real();
    Eigen::VectorXd ci = basis.u_real.transpose() * psi.imag();
    Eigen::VectorXcd coef(cr.size());
    coef.real() = cr;
    coef.imag() = ci;
    coef.array() *= phases.array();
    const Eigen::VectorXd pr = coef.real(), pi = coef.imag();
    State out(psi.size());
    out.real() = basis.u_real * pr;
    out.imag() = basis.u_real * pi;
    return out;
  }
  Eigen::VectorXcd coef = basis.u_cplx.adjoint() * psi;
  coef.array() *= phases.array();
  return basis.u_cplx * coef;
}

void validate_control(const StepControl& ctl, double total_time) {
  if (!(ctl.base_step > 0.0))
    throw std::invalid_argument("step control: base_step must be > 0");
  if (ctl.base_step > total_time / 10.0)
    throw std::invalid_argument("step control: base_step " + std::to_string(ctl.base_step) +
                                " exceeds total_time/10 = " + std::to_string(total_time / 10.0));
  if (ctl.sample_stride < 1)
    throw std::invalid_argument("step control: sample_stride must be >= 1");
  if (!(ctl.tolerance > 0.0))
    throw std::invalid_argument("step control: tolerance must be > 0");
}

long plan_steps(double total_time, const StepControl& ctl) {
  long n = static_cast<long>(std::ceil(total_time / ctl.base_step));
  if (n < 1) n = 1;
  const long k = ctl.sample_stride;
  return k * ((n + k - 1) / k);  // multiple of the stride, so samples stay uniform
}

}  // namespace

GroundState ground_state_of(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("ground_state_of: matrix must be square");
  if (matrix.rows() < 2) throw std::invalid_argument("ground_state_of: dim must be >= 2");
  const double herm_defect = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > 1e-12)
    throw std::invalid_argument("ground_state_of: matrix not Hermitian (defect " +
                                std::to_string(herm_defect) + ")");

  EigenBasis basis;
  switch (detect_structure(matrix)) {
    case Structure::TridiagonalReal: {
      const Eigen::Index n = matrix.rows();
      Eigen::VectorXd diag(n), sub(n - 1);
      for (Eigen::Index i = 0; i < n; ++i) diag[i] = matrix(i, i).real();
      for (Eigen::Index i = 0; i + 1 < n; ++i) sub[i] = matrix(i + 1, i).real();
      basis = decompose_tridiagonal(diag, sub);
      break;
    }
    case Structure::DenseReal:
      basis = decompose_real(matrix.real());
      break;
    case Structure::DenseComplex:
      basis = decompose_complex(matrix);
      break;
  }

  GroundState g;
  g.energy = basis.evals[0];
  g.vector = basis.real ? State(basis.u_real.col(0).cast<Complex>()) : State(basis.u_cplx.col(0));
  const double raw_gap = basis.evals[1] - basis.evals[0];
  g.degenerate = raw_gap < kDegeneracyTol;
  g.gap = g.degenerate ? 0.0 : raw_gap;

  // Largest-magnitude component made real positive, lowest index on ties.
  Eigen::Index pivot = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < g.vector.size(); ++i) {
    const double a = std::abs(g.vector[i]);
    if (a > best) {
      best = a;
      pivot = i;
    }
  }
  g.vector *= std::conj(g.vector[pivot]) / best;
  return g;
}

Trajectory propagate(const Schedule& sch, const Eigen::Ref<const State>& initial, const StepControl& ctl) {
  validate_control(ctl, sch.total_time);
  if (initial.size() != sch.dim())
    throw std::invalid_argument("propagate: initial state dim " + std::to_string(initial.size()) +
                                " does not match schedule dim " + std::to_string(sch.dim()));
  if (!is_normalized(initial, kEvolvedNormalizationTol))
    throw std::invalid_argument("propagate: initial state not normalized");
  if (sch.variant == ScheduleVariant::Full && sch.potential.dim() != sch.dim())
    throw std::invalid_argument("propagate: schedule potential dim mismatch");

  const double T = sch.total_time;
  const long n = plan_steps(T, ctl);
  const double dt = T / static_cast<double>(n);
  const bool full = sch.variant == ScheduleVariant::Full;
  const Structure structure = detect_structure(sch.initial.matrix);

  // Static pieces of the interpolation, extracted once.
  Eigen::MatrixXd hi_real;
  Eigen::VectorXd hi_diag, hi_sub;
  if (structure == Structure::TridiagonalReal) {
    const Eigen::Index d = sch.dim();
    hi_diag.resize(d);
    hi_sub.resize(d - 1);
    for (Eigen::Index i = 0; i < d; ++i) hi_diag[i] = sch.initial.matrix(i, i).real();
    for (Eigen::Index i = 0; i + 1 < d; ++i) hi_sub[i] = sch.initial.matrix(i + 1, i).real();
  } else if (structure == Structure::DenseReal) {
    hi_real = sch.initial.matrix.real();
  }

  Trajectory traj;
  traj.schedule = sch;
  traj.step_count = n;
  traj.times.reserve(static_cast<std::size_t>(n / ctl.sample_stride) + 1);
  traj.states.reserve(traj.times.capacity());
  traj.norms.reserve(traj.times.capacity());

  State psi = initial;
  traj.times.push_back(0.0);
  traj.states.push_back(psi);
  traj.norms.push_back(psi.norm());

  double drift = std::abs(psi.norm() - 1.0);
  for (long k = 0; k < n; ++k) {
    const double s_mid = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    EigenBasis basis;
    switch (structure) {
      case Structure::TridiagonalReal: {
        Eigen::VectorXd diag = (1.0 - s_mid) * hi_diag;
        if (full) diag += s_mid * sch.potential.values;
        basis = decompose_tridiagonal(diag, ((1.0 - s_mid) * hi_sub).eval());
        break;
      }
      case Structure::DenseReal: {
        Eigen::MatrixXd h = (1.0 - s_mid) * hi_real;
        if (full) h.diagonal() += s_mid * sch.potential.values;
        basis = decompose_real(h);
        break;
      }
      case Structure::DenseComplex: {
        basis = decompose_complex(interpolate(sch, T * s_mid));
        break;
      }
    }
    psi = apply_step(basis, unit_phases(basis.evals, dt), psi);

    const double miss = std::abs(psi.norm() - 1.0);
    if (miss > drift) drift = miss;
    if (miss > ctl.tolerance)
      throw PropagationError("propagate: unitarity lost at step " + std::to_string(k) +
                             " (|norm - 1| = " + std::to_string(miss) + ")");
    if ((k + 1) % ctl.sample_stride == 0) {
      traj.times.push_back(T * static_cast<double>(k + 1) / static_cast<double>(n));
      traj.states.push_back(psi);
      traj.norms.push_back(psi.norm());
    }
  }
  traj.norm_drift = drift;
  return traj;
}

Trajectory propagate_reference(const Schedule& sch, const StepControl& ctl) {
  if (sch.variant != ScheduleVariant::Reference)
    throw std::invalid_argument("propagate_reference: schedule variant must be Reference");
  validate_control(ctl, sch.total_time);
  const State& ground = sch.initial.ground_state;
  if (ground.size() != sch.dim())
    throw std::invalid_argument("propagate_reference: initial Hamiltonian has no valid ground state");
  if (!is_normalized(ground, kEvolvedNormalizationTol))
    throw std::invalid_argument("propagate_reference: ground state not normalized");

  const double T = sch.total_time;
  const long n = plan_steps(T, ctl);
  const double dt = T / static_cast<double>(n);
  const double lambda_min = sch.initial.ground_energy;

  EigenBasis basis;
  switch (detect_structure(sch.initial.matrix)) {
    case Structure::TridiagonalReal: {
      const Eigen::Index d = sch.dim();
      Eigen::VectorXd diag(d), sub(d - 1);
      for (Eigen::Index i = 0; i < d; ++i) diag[i] = sch.initial.matrix(i, i).real();
      for (Eigen::Index i = 0; i + 1 < d; ++i) sub[i] = sch.initial.matrix(i + 1, i).real();
      basis = decompose_tridiagonal(diag, sub);
      break;
    }
    case Structure::DenseReal:
      basis = decompose_real(sch.initial.matrix.real());
      break;
    case Structure::DenseComplex:
      basis = decompose_complex(sch.initial.matrix);
      break;
  }

  // All H_0(t) share this eigenbasis, so the whole run happens in
  // eigencoordinates; states are reconstructed at sample points, where the
  // eigenvector property of the initial state is verified.
  Eigen::VectorXcd coef;
  if (basis.real) {
    Eigen::VectorXd cr = basis.u_real.transpose() * ground.real();
    Eigen::VectorXd ci = basis.u_real.transpose() * ground.imag();
    coef.resize(cr.size());
    coef.real() = cr;
    coef.imag() = ci;
  } else {
    coef = basis.u_cplx.adjoint() * ground;
  }

  Trajectory traj;
  traj.schedule = sch;
  traj.step_count = n;

  const auto analytic_phase = [&](double t) { return -lambda_min * (t - t * t / (2.0 * T)); };
  const auto record_and_check = [&](long step_index) {
    const double t = T * static_cast<double>(step_index) / static_cast<double>(n);
    Eigen::VectorXcd psi;
    if (basis.real) {
      const Eigen::VectorXd pr = coef.real(), pi = coef.imag();
      psi.resize(coef.size());
      psi.real() = basis.u_real * pr;
      psi.imag() = basis.u_real * pi;
    } else {
      psi = basis.u_cplx * coef;
    }
    traj.times.push_back(t);
    traj.states.push_back(psi);
    traj.norms.push_back(psi.norm());

    const Complex ip = inner(ground, psi);  // <g_I | g_0(t)>
    // Distance by explicit rotation; the norm-and-overlap shortcut loses
    // half the significand to cancellation at the scales checked here.
    const double aligned_dist = (std::polar(1.0, -std::arg(ip)) * psi - ground).norm();
    if (aligned_dist > 10.0 * ctl.tolerance)
      throw PropagationError("propagate_reference: drift off the ground-state ray at t = " +
                             std::to_string(t) + " (distance " + std::to_string(aligned_dist) + ")");
    const Complex residual = ip * std::polar(1.0, -analytic_phase(t));
    if (std::abs(std::arg(residual)) > ctl.tolerance)
      throw PropagationError("propagate_reference: accumulated phase off analytic value at t = " +
                             std::to_string(t) + " by " + std::to_string(std::arg(residual)) + " rad");
  };

  record_and_check(0);
  double drift = std::abs(ground.norm() - 1.0);
  for (long k = 0; k < n; ++k) {
    const double s_mid = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    for (Eigen::Index i = 0; i < coef.size(); ++i)
      coef[i] *= std::polar(1.0, -(1.0 - s_mid) * basis.evals[i] * dt);
    const double miss = std::abs(coef.norm() - 1.0);
    if (miss > drift) drift = miss;
    if (miss > ctl.tolerance)
      throw PropagationError("propagate_reference: unitarity lost at step " + std::to_string(k));
    if ((k + 1) % ctl.sample_stride == 0) record_and_check(k + 1);
  }
  traj.norm_drift = drift;
  return traj;
}

State brute_force_propagator(const Schedule& sch, const Eigen::Ref<const State>& initial, double dt) {
  if (!(dt > 0.0) || dt > sch.total_time / 100.0)
    throw std::invalid_argument("brute_force_propagator: dt must lie in (0, T/100]");
  if (initial.size() != sch.dim())
    throw std::invalid_argument("brute_force_propagator: dimension mismatch");

  const double T = sch.total_time;
  const long n = static_cast<long>(std::ceil(T / dt));
  const double h = T / static_cast<double>(n);
  State psi = initial;
  for (long k = 0; k < n; ++k) {
    const double t_mid = T * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(interpolate(sch, t_mid));
    if (es.info() != Eigen::Success) throw PropagationError("brute_force_propagator: eigensolver failed");
    Eigen::VectorXcd phases = unit_phases(es.eigenvalues(), h);
    const Eigen::MatrixXcd step =
        es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    psi = step * psi;
  }
  return psi;
}

}  // namespace adsim
