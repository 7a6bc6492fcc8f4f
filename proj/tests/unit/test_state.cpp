#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "adsim/state.hpp"
#include "support/oracles.hpp"

using adsim::Complex;
using adsim::State;

TEST_CASE("basis_state places a single unit amplitude") {
  const State a = adsim::basis_state(0, 4);
  CHECK(a[0] == Complex(1.0, 0.0));
  CHECK(a.tail(3).norm() == 0.0);

  const State b = adsim::basis_state(3, 4);
  CHECK(b[3] == Complex(1.0, 0.0));
  CHECK(adsim::is_normalized(b));

  CHECK_THROWS_AS(adsim::basis_state(4, 4), std::out_of_range);
  CHECK_THROWS_AS(adsim::basis_state(-1, 4), std::out_of_range);
  CHECK_THROWS_AS(adsim::basis_state(0, 1), std::invalid_argument);
}

TEST_CASE("inner follows the bra-ket convention") {
  const State e0 = adsim::basis_state(0, 3);
  const State e1 = adsim::basis_state(1, 3);
  CHECK(adsim::inner(e0, e0) == Complex(1.0, 0.0));
  CHECK(adsim::inner(e0, e1) == Complex(0.0, 0.0));
  // conjugate-linear in the first argument: <i a | b> = -i <a|b>
  CHECK(adsim::inner(Complex(0.0, 1.0) * e0, e0) == Complex(0.0, -1.0));

  for (int trial = 0; trial < 10; ++trial) {
    const State a = oracles::random_state(6, 100 + trial);
    const State b = oracles::random_state(6, 200 + trial);
    const Complex ab = adsim::inner(a, b);
    CHECK(std::abs(ab - std::conj(adsim::inner(b, a))) < 1e-14);
    CHECK(adsim::inner(a, a).real() >= 0.0);
    CHECK(std::abs(adsim::inner(a, a).imag()) < 1e-15);
  }
  CHECK_THROWS_AS(adsim::inner(e0, adsim::basis_state(0, 4)), std::invalid_argument);
}

TEST_CASE("norm basics") {
  CHECK(adsim::norm(adsim::basis_state(0, 4)) == 1.0);
  CHECK(adsim::norm(State::Zero(4)) == 0.0);
  State pyth(3);
  pyth << Complex(0.6, 0.0), Complex(0.0, 0.8), Complex(0.0, 0.0);
  CHECK(adsim::norm(pyth) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("is_normalized uses the squared-sum criterion") {
  const State a = oracles::random_state(8, 42);
  CHECK(adsim::is_normalized(a));
  CHECK_FALSE(adsim::is_normalized(1.001 * a));
  CHECK(adsim::is_normalized(1.001 * a, 3e-3));
}

TEST_CASE("phase_align removes a pure phase") {
  const State e2 = adsim::basis_state(2, 4);
  const State rotated = std::polar(1.0, M_PI / 3.0) * e2;
  const State back = adsim::phase_align(rotated, e2);
  CHECK((back - e2).norm() < 1e-15);

  const State a = oracles::random_state(5, 7);
  CHECK((adsim::phase_align(a, a) - a).norm() < 1e-15);

  CHECK_THROWS_AS(adsim::phase_align(adsim::basis_state(0, 4), adsim::basis_state(1, 4)),
                  std::domain_error);
}

TEST_CASE("phase_align is optimal over sampled phases") {
  for (int trial = 0; trial < 20; ++trial) {
    const State a = oracles::random_state(7, 300 + trial);
    const State b = oracles::random_state(7, 400 + trial);
    const State aligned = adsim::phase_align(a, b);

    const Complex ip = adsim::inner(aligned, b);
    CHECK(ip.real() >= 0.0);
    CHECK(std::abs(ip.imag()) < 1e-12);

    const double best = (aligned - b).norm();
    for (int k = 0; k < 64; ++k) {
      const double theta = 2.0 * M_PI * k / 64.0;
      CHECK((std::polar(1.0, theta) * a - b).norm() >= best - 1e-12);
    }
  }
}

TEST_CASE("tail_mass sums the top of the basis") {
  CHECK(adsim::tail_mass(adsim::basis_state(0, 4), 1) == 0.0);
  CHECK(adsim::tail_mass(adsim::basis_state(3, 4), 3) == 1.0);

  const State uniform = State::Constant(4, Complex(0.5, 0.0));
  CHECK(adsim::tail_mass(uniform, 2) == doctest::Approx(0.5).epsilon(1e-15));

  for (int trial = 0; trial < 10; ++trial) {
    const State a = oracles::random_state(9, 500 + trial);
    CHECK(std::abs(adsim::tail_mass(a, 0) - a.squaredNorm()) < 1e-12);
    CHECK(adsim::tail_mass(a, 9) == 0.0);
    for (Eigen::Index c = 1; c <= 9; ++c)
      CHECK(adsim::tail_mass(a, c) <= adsim::tail_mass(a, c - 1) + 1e-15);
  }
  CHECK_THROWS_AS(adsim::tail_mass(uniform, 5), std::out_of_range);
  CHECK_THROWS_AS(adsim::tail_mass(uniform, -1), std::out_of_range);
}
