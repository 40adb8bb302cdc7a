#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/Dense>
#include <random>
#include <vector>

#include "core/dynamics.hpp"
#include "core/ode.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace naqc;
using testutil::dist;

namespace {

// Independent closed solution: in the frame rotating with the field the
// Hamiltonian is constant, so
//   psi(t) = diag(e^{-i w t/2}, e^{i w t/2}) * exp(-i H_rot t) * psi(0),
//   H_rot = ((w0 cos th - w)/2) sz + (w0 sin th / 2) sx.
// Uses Eigen's unitary matrix exponential via diagonalization.
QubitState frame_solution(const ControlParams& p, const QubitState& psi0, double t) {
  Eigen::Matrix2cd hrot;
  const double dz = 0.5 * (p.omega0 * std::cos(p.theta) - p.omega);
  const double dx = 0.5 * p.omega0 * std::sin(p.theta);
  hrot << Complex(dz, 0.0), Complex(dx, 0.0), Complex(dx, 0.0), Complex(-dz, 0.0);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(hrot);
  const Eigen::Vector2cd phases{std::exp(Complex(0.0, -es.eigenvalues()(0) * t)),
                                std::exp(Complex(0.0, -es.eigenvalues()(1) * t))};
  const Eigen::Matrix2cd u =
      es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  Eigen::Vector2cd v{psi0.a0, psi0.a1};
  v = u * v;
  v(0) *= std::exp(Complex(0.0, -0.5 * p.omega * t));
  v(1) *= std::exp(Complex(0.0, 0.5 * p.omega * t));
  return {v(0), v(1)};
}

}  // namespace

TEST_CASE("ode_propagate: vanishing Hamiltonian leaves the state alone") {
  const ControlParams p{1e-12, 0.0, 0.0};
  const QubitState psi0 = normalized({{0.6, 0.0}, {0.0, 0.8}});
  const OdeResult r = ode_propagate(p, psi0, 7.0);
  CHECK(fidelity(r.psi, psi0) >= 1.0 - 1e-8);
}

TEST_CASE("ode_propagate: theta = 0 keeps populations constant") {
  const ControlParams p{2.0, 1.0, 0.0};
  const QubitState psi0 = normalized({{0.6, 0.1}, {-0.2, 0.77}});
  for (const double t : {0.5, 3.0, 11.0}) {
    const OdeResult r = ode_propagate(p, psi0, t);
    CHECK_CLOSE(std::norm(r.psi.a0), std::norm(psi0.a0), 1e-10);
    CHECK_CLOSE(std::norm(r.psi.a1), std::norm(psi0.a1), 1e-10);
  }
}

TEST_CASE("ode_propagate: matches the rotating-frame closed solution") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ut(0.0, 8.0);
  for (int i = 0; i < 40; ++i) {
    const ControlParams p = testutil::random_params(rng, 0.25, 4.0, 6.0);
    const QubitState psi0 = testutil::random_state(rng);
    const double t = ut(rng);
    const OdeResult got = ode_propagate(p, psi0, t);
    const QubitState want = frame_solution(p, psi0, t);
    CHECK_CLOSE(dist(got.psi, want), 0.0, 1e-8);
  }
}

TEST_CASE("ode_propagate: transition population follows the closed form") {
  const ControlParams p{1.0, 2.0, kPi / 3};
  const EigenPair basis0 = instantaneous_basis(p, 0.0, BasisMode::Diagonalized);
  const double wb = rabi_frequency(p);
  const double coupling = p.omega * std::sin(p.theta) / wb;
  for (int k = 1; k <= 10; ++k) {
    const double t = 0.35 * k;
    const OdeResult r = ode_propagate(p, basis0.state0, t);
    const EigenPair basis = instantaneous_basis(p, t, BasisMode::Diagonalized);
    const auto [c0, c1] = project(r.psi, basis);
    const double expected = coupling * coupling * std::pow(std::sin(0.5 * wb * t), 2);
    CHECK_CLOSE(std::norm(c1), expected, 1e-6);
  }
}

TEST_CASE("ode oracle agrees with both branch coefficient populations on a grid") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 12; ++i) {
    const ControlParams p = testutil::random_params(rng, 0.5, 4.0, 6.0);
    const double wb = rabi_frequency(p);
    if (wb < 1e-3) continue;
    const double t_max = 20.0 / wb;
    std::vector<double> times;
    for (int k = 0; k <= 25; ++k) times.push_back(t_max * k / 25.0);
    const EigenPair basis0 = instantaneous_basis(p, 0.0, BasisMode::Diagonalized);
    for (const Branch branch : {Branch::Up, Branch::Down}) {
      const QubitState psi0 =
          branch == Branch::Up ? basis0.state0 : basis0.state1;
      const Trajectory traj = ode_trajectory(p, psi0, times);
      for (std::size_t k = 0; k < times.size(); ++k) {
        const EigenPair basis =
            instantaneous_basis(p, times[k], BasisMode::Diagonalized);
        const auto [c0, c1] = project(traj.states[k], basis);
        const auto [w0, w1] = analytic_coefficients(p, times[k], branch);
        CHECK_CLOSE(std::norm(c0), std::norm(w0), 1e-6);
        CHECK_CLOSE(std::norm(c1), std::norm(w1), 1e-6);
      }
    }
  }
}

TEST_CASE("ode_propagate: norm preserved within 10*tol") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 25; ++i) {
    const ControlParams p = testutil::random_params(rng);
    const QubitState psi0 = testutil::random_state(rng);
    const double t_end = 50.0 / p.omega0;
    const OdeOptions options{1e-9, 1e-12};
    const OdeResult r = ode_propagate(p, psi0, t_end, options);
    CHECK_CLOSE(r.norm, 1.0, 10.0 * options.tol);
  }
}

TEST_CASE("ode_trajectory: samples at requested times, rejects bad input") {
  const ControlParams p{1.0, 2.0, 1.0};
  const QubitState psi0{{1.0, 0.0}, {0.0, 0.0}};
  const std::vector<double> times{0.0, 0.25, 0.5, 0.75, 1.0};
  const Trajectory traj = ode_trajectory(p, psi0, times);
  REQUIRE(traj.times.size() == 5);
  CHECK(dist(traj.states[0], psi0) == 0.0);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const OdeResult direct = ode_propagate(p, psi0, times[k]);
    CHECK_CLOSE(dist(traj.states[k], direct.psi), 0.0, 1e-8);
  }
  const std::vector<double> backwards{1.0, 0.5};
  CHECK_THROWS_AS(ode_trajectory(p, psi0, backwards), Error);
  const std::vector<double> negative{-1.0};
  CHECK_THROWS_AS(ode_trajectory(p, psi0, negative), Error);
}

TEST_CASE("ode_propagate: input validation") {
  const QubitState psi0{{1.0, 0.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(ode_propagate({1.0, 1.0, 1.0}, psi0, -1.0), Error);
  CHECK_THROWS_AS(ode_propagate({1.0, 1.0, 1.0}, psi0, 1.0, {1e-3, 1e-12}), Error);
  CHECK_THROWS_AS(ode_propagate({1.0, 1.0, 1.0}, psi0, 1.0, {0.0, 1e-12}), Error);
  CHECK_THROWS_AS(ode_propagate({1.0, 1.0, 1.0}, {{1.0, 0.0}, {1.0, 0.0}}, 1.0), Error);
}

TEST_CASE("ode_propagate: step underflow is reported") {
  // an absurdly large minimum step cannot satisfy the tolerance on a
  // fast-rotating drive, so the controller must give up loudly
  const ControlParams p{8.0, 40.0, 1.2};
  const QubitState psi0{{1.0, 0.0}, {0.0, 0.0}};
  bool threw = false;
  try {
    ode_propagate(p, psi0, 10.0, {1e-9, 5.0});
  } catch (const Error& e) {
    threw = true;
    CHECK(e.code() == ErrorCode::StepUnderflow);
  }
  CHECK(threw);
}
