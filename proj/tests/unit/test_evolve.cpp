#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "adsim/analysis.hpp"
#include "adsim/evolve.hpp"
#include "adsim/hamiltonian.hpp"
#include "support/oracles.hpp"

using adsim::Complex;
using adsim::HiKind;
using adsim::State;

namespace {

adsim::InitialHamiltonian zero_hamiltonian(Eigen::Index dim) {
  adsim::InitialHamiltonian hi;
  hi.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  hi.ground_state = adsim::basis_state(0, dim);
  hi.ground_energy = 0.0;
  hi.ground_gap = 0.0;
  return hi;
}

adsim::Potential zero_potential(Eigen::Index dim) {
  Eigen::VectorXd z(1);
  z << 0.0;
  return adsim::poly_potential(z, dim);
}

}  // namespace

TEST_CASE("ground_state_of on the delta problem Hamiltonian") {
  Eigen::MatrixXcd hp = Eigen::MatrixXcd::Zero(8, 8);
  hp.diagonal() = adsim::delta_potential(5, 8).values.cast<Complex>();
  const adsim::GroundState g = adsim::ground_state_of(hp);
  CHECK(g.energy == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK((g.vector - adsim::basis_state(5, 8)).norm() < 1e-14);
  CHECK(g.gap == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_FALSE(g.degenerate);
}

TEST_CASE("ground_state_of reports degeneracy with gap 0") {
  const adsim::GroundState g = adsim::ground_state_of(Eigen::MatrixXcd::Identity(3, 3));
  CHECK(g.energy == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.gap == 0.0);
  CHECK(g.degenerate);
  CHECK(adsim::is_normalized(g.vector));
}

TEST_CASE("ground_state_of 2x2 closed form and phase convention") {
  Eigen::MatrixXcd m(2, 2);
  m << Complex(0, 0), Complex(-1, 0), Complex(-1, 0), Complex(0, 0);
  const adsim::GroundState g = adsim::ground_state_of(m);
  CHECK(g.energy == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(g.gap == doctest::Approx(2.0).epsilon(1e-14));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(g.vector[0] - Complex(r, 0.0)) < 1e-14);
  CHECK(std::abs(g.vector[1] - Complex(r, 0.0)) < 1e-14);
}

TEST_CASE("ground_state_of rejects bad input") {
  CHECK_THROWS_AS(adsim::ground_state_of(Eigen::MatrixXcd::Zero(3, 4)), std::invalid_argument);
  CHECK_THROWS_AS(adsim::ground_state_of(Eigen::MatrixXcd::Zero(1, 1)), std::invalid_argument);
  Eigen::MatrixXcd bad(2, 2);
  bad << Complex(0, 0), Complex(1, 0), Complex(2, 0), Complex(0, 0);
  CHECK_THROWS_AS(adsim::ground_state_of(bad), std::invalid_argument);
}

TEST_CASE("ground_state_of residual stays tiny on complex Hermitian input") {
  for (int seed = 1; seed <= 4; ++seed) {
    const adsim::InitialHamiltonian hi =
        adsim::build_hi(HiKind::SeededRandomHermitian, {}, 16, seed);
    const adsim::GroundState g = adsim::ground_state_of(hi.matrix);
    const double scale = hi.matrix.cwiseAbs().maxCoeff();
    CHECK((hi.matrix * g.vector - g.energy * g.vector).norm() <= 1e-10 * std::max(1.0, scale));
    // Lowest eigenvalue never exceeds any diagonal Rayleigh quotient.
    for (Eigen::Index i = 0; i < 16; ++i) CHECK(g.energy <= hi.matrix(i, i).real() + 1e-12);
  }
}

TEST_CASE("propagate validates its inputs") {
  const adsim::InitialHamiltonian hi = adsim::build_hi(HiKind::Hopping, {}, 4);
  const adsim::Schedule sch = adsim::make_schedule(hi, adsim::delta_potential(1, 4), 1.0);

  adsim::StepControl coarse;
  coarse.base_step = 0.2;  // exceeds T/10
  CHECK_THROWS_AS(adsim::propagate(sch, hi.ground_state, coarse), std::invalid_argument);

  adsim::StepControl stride0;
  stride0.base_step = 0.05;
  stride0.sample_stride = 0;
  CHECK_THROWS_AS(adsim::propagate(sch, hi.ground_state, stride0), std::invalid_argument);

  adsim::StepControl badtol;
  badtol.base_step = 0.05;
  badtol.tolerance = 0.0;
  CHECK_THROWS_AS(adsim::propagate(sch, hi.ground_state, badtol), std::invalid_argument);

  adsim::StepControl ok;
  ok.base_step = 0.05;
  CHECK_THROWS_AS(adsim::propagate(sch, 2.0 * hi.ground_state, ok), std::invalid_argument);
  CHECK_THROWS_AS(adsim::propagate(sch, adsim::basis_state(0, 5), ok), std::invalid_argument);
}

TEST_CASE("zero Hamiltonian leaves any state untouched") {
  const adsim::Schedule sch = adsim::make_schedule(zero_hamiltonian(4), zero_potential(4), 1.0);
  const State psi = oracles::random_state(4, 77);
  adsim::StepControl ctl;
  ctl.base_step = 0.1;
  ctl.sample_stride = 1;
  const adsim::Trajectory traj = adsim::propagate(sch, psi, ctl);
  CHECK((traj.final_state() - psi).norm() <= 1e-15);
  CHECK((adsim::brute_force_propagator(sch, psi, 0.01) - psi).norm() <= 1e-12);
}

TEST_CASE("trajectory bookkeeping: times, samples, drift") {
  const adsim::InitialHamiltonian hi = adsim::build_hi(HiKind::Hopping, {}, 8);
  const adsim::Schedule sch = adsim::make_schedule(hi, adsim::delta_potential(3, 8), 2.0);
  adsim::StepControl ctl;
  ctl.base_step = 0.03;  // 67 raw steps, rounded up to 70 for stride 10
  const adsim::Trajectory traj = adsim::propagate(sch, hi.ground_state, ctl);

  CHECK(traj.step_count == 70);
  CHECK(traj.times.size() == 8);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == doctest::Approx(2.0).epsilon(1e-15));
  for (std::size_t k = 1; k < traj.times.size(); ++k)
    CHECK(traj.times[k] - traj.times[k - 1] == doctest::Approx(2.0 / 7.0).epsilon(1e-12));
  CHECK((traj.states.front() - hi.ground_state).norm() == 0.0);
  CHECK(traj.norm_drift <= 1e-9);
  CHECK(traj.valid());
}

TEST_CASE("diagonal schedule is a no-op on its ground state") {
  const adsim::InitialHamiltonian hi = adsim::build_hi(HiKind::Diagonal, {}, 16);
  const adsim::Schedule sch = adsim::make_schedule(hi, adsim::delta_potential(5, 16), 10.0);
  adsim::StepControl ctl;
  ctl.base_step = 0.05;
  const adsim::Trajectory traj = adsim::propagate(sch, hi.ground_state, ctl);
  const State aligned = adsim::phase_align(traj.final_state(), hi.ground_state);
  CHECK((aligned - hi.ground_state).norm() < 1e-6);
  CHECK(adsim::success_probability(traj.final_state(), 5) == 0.0);
}

TEST_CASE("commuting schedule matches the closed-form phases") {
  const adsim::InitialHamiltonian hi = adsim::build_hi(HiKind::Diagonal, {}, 8);
  Eigen::VectorXd coeffs(3);
  coeffs << 0.4, -0.3, 0.05;
  const adsim::Potential p = adsim::poly_potential(coeffs, 8);
  const adsim::Schedule sch = adsim::make_schedule(hi, p, 3.0);

  const State initial = oracles::random_state(8, 21);
  adsim::StepControl ctl;
  ctl.base_step = 0.01;
  const adsim::Trajectory traj = adsim::propagate(sch, initial, ctl);

  Eigen::VectorXd d(8);
  for (Eigen::Index x = 0; x < 8; ++x) d[x] = static_cast<double>(x);
  const State expect = oracles::commuting_final(d, p.values, initial, 3.0);
  CHECK((traj.final_state() - expect).norm() < 1e-12);
  CHECK((adsim::brute_force_propagator(sch, initial, 0.03) - expect).norm() < 1e-12);
}

TEST_CASE("propagate matches the brute-force oracle at two resolutions") {
  const adsim::InitialHamiltonian hi = adsim::build_hi(HiKind::Hopping, {}, 4);
  const adsim::Schedule sch = adsim::make_schedule(hi, adsim::delta_potential(1, 4), 5.0);
  adsim::StepControl ctl;
  ctl.base_step = 1e-3;
  ctl.sample_stride = 250;
  const adsim::Trajectory traj = adsim::propagate(sch, hi.ground_state, ctl);
  const State oracle = adsim::brute_force_propagator(sch, hi.ground_state, 1e-5);
  CHECK((traj.final_state() - oracle).norm() < 1e-6);
}

TEST_CASE("brute_force_propagator rejects coarse steps") {
  const adsim::InitialHamiltonian hi = adsim::build_hi(HiKind::Hopping, {}, 4);
  const adsim::Schedule sch = adsim::make_schedule(hi, adsim::delta_potential(1, 4), 5.0);
  CHECK_THROWS_AS(adsim::brute_force_propagator(sch, hi.ground_state, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(adsim::brute_force_propagator(sch, hi.ground_state, 0.0),
                  std::invalid_argument);
}

TEST_CASE("step halving converges at second order") {
  const adsim::InitialHamiltonian hi = adsim::build_hi(HiKind::Hopping, {}, 6);
  const adsim::Schedule sch = adsim::make_schedule(hi, adsim::delta_potential(2, 6), 5.0);
  const State anchor = adsim::brute_force_propagator(sch, hi.ground_state, 1e-3);

  adsim::StepControl ctl;
  ctl.sample_stride = 1;
  ctl.base_step = 0.1;
  const double e1 = (adsim::propagate(sch, hi.ground_state, ctl).final_state() - anchor).norm();
  ctl.base_step = 0.05;
  const double e2 = (adsim::propagate(sch, hi.ground_state, ctl).final_state() - anchor).norm();

  CHECK(e2 < e1);
  CHECK(e1 / e2 >= 3.5);
  CHECK(e1 / e2 <= 4.5);
}

TEST_CASE("global potential shift only changes a global phase") {
  const adsim::InitialHamiltonian hi = adsim::build_hi(HiKind::Hopping, {}, 16);
  const adsim::Potential p = adsim::delta_potential(9, 16);
  const adsim::Potential shifted = adsim::shift_potential(p, 1.0);
  adsim::StepControl ctl;
  ctl.base_step = 0.0125;

  const State a =
      adsim::propagate(adsim::make_schedule(hi, p, 5.0), hi.ground_state, ctl).final_state();
  const State b =
      adsim::propagate(adsim::make_schedule(hi, shifted, 5.0), hi.ground_state, ctl).final_state();
  for (Eigen::Index x = 0; x < 16; ++x)
    CHECK(std::abs(std::norm(a[x]) - std::norm(b[x])) < 1e-10);
  // The relative phase between the two runs is global: aligning kills it.
  CHECK((adsim::phase_align(a, b) - b).norm() < 1e-8);
}

TEST_CASE("reference run stays on the initial ground ray") {
  for (const Eigen::Index dim : {2, 32}) {
    const adsim::InitialHamiltonian hi = adsim::build_hi(HiKind::Hopping, {}, dim);
    const adsim::Schedule sch =
        adsim::make_schedule(hi, {}, 4.0, adsim::ScheduleVariant::Reference);
    adsim::StepControl ctl;
    ctl.base_step = 0.02;
    const adsim::Trajectory traj = adsim::propagate_reference(sch, ctl);
    const State aligned = adsim::phase_align(traj.final_state(), hi.ground_state);
    CHECK((aligned - hi.ground_state).norm() < 1e-8);
    CHECK(traj.valid());
  }
}

TEST_CASE("reference run accrues the analytic phase") {
  // lambda_min = -1, T = 2: accumulated phase -lambda (t - t^2/2T) = +1 rad at t = 2.
  const adsim::InitialHamiltonian hi = adsim::build_hi(HiKind::Hopping, {}, 2);
  REQUIRE(hi.ground_energy == doctest::Approx(-1.0).epsilon(1e-14));
  const adsim::Schedule sch = adsim::make_schedule(hi, {}, 2.0, adsim::ScheduleVariant::Reference);
  adsim::StepControl ctl;
  ctl.base_step = 0.01;
  const adsim::Trajectory traj = adsim::propagate_reference(sch, ctl);
  const Complex ip = adsim::inner(hi.ground_state, traj.final_state());
  CHECK(std::arg(ip) == doctest::Approx(1.0).epsilon(1e-9));

  // Shifted random kind has lambda_min = 0: no phase accrues at all.
  const adsim::InitialHamiltonian flat = adsim::build_hi(HiKind::SeededRandomHermitian, {}, 12, 4);
  const adsim::Trajectory still = adsim::propagate_reference(
      adsim::make_schedule(flat, {}, 3.0, adsim::ScheduleVariant::Reference), ctl);
  const Complex ip0 = adsim::inner(flat.ground_state, still.final_state());
  CHECK(std::abs(std::arg(ip0)) < 1e-9);
}

TEST_CASE("propagate_reference rejects full schedules") {
  const adsim::InitialHamiltonian hi = adsim::build_hi(HiKind::Hopping, {}, 4);
  const adsim::Schedule full = adsim::make_schedule(hi, adsim::delta_potential(1, 4), 1.0);
  adsim::StepControl ctl;
  ctl.base_step = 0.05;
  CHECK_THROWS_AS(adsim::propagate_reference(full, ctl), std::invalid_argument);
}
