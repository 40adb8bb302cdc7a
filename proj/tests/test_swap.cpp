#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "core/swap.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace naqc;

namespace {

double total_norm(const TwoQubitState& s) {
  double total = 0.0;
  for (const Complex& a : s.amps) total += std::norm(a);
  return total;
}

// independent entanglement oracle: C = sqrt(2 (1 - tr(rho_A^2))) from the
// reduced density matrix of the first particle
double concurrence_via_purity(const TwoQubitState& s) {
  Complex rho[2][2] = {};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        rho[i][j] += s.amps[2 * i + k] * std::conj(s.amps[2 * j + k]);
  const double purity =
      std::norm(rho[0][0]) + std::norm(rho[1][1]) + 2.0 * std::norm(rho[0][1]);
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

}  // namespace

TEST_CASE("build_swap_outputs: printed pair") {
  {
    const double r = 1.0 / std::sqrt(2.0);
    const auto [plus, minus] = build_swap_outputs({r, 0.0}, {r, 0.0});
    CHECK_CLOSE(std::abs(plus.amps[0] - Complex(r, 0.0)), 0.0, 1e-15);
    CHECK_CLOSE(std::abs(plus.amps[3] - Complex(r, 0.0)), 0.0, 1e-15);
    CHECK_CLOSE(std::abs(minus.amps[3] + Complex(r, 0.0)), 0.0, 1e-15);
    CHECK(std::abs(plus.amps[1]) == 0.0);
    CHECK(std::abs(plus.amps[2]) == 0.0);
    CHECK_CLOSE(concurrence(plus), 1.0, 1e-15);
    CHECK_CLOSE(concurrence(minus), 1.0, 1e-15);
  }
  {
    const auto [plus, minus] = build_swap_outputs({1.0, 0.0}, {0.0, 0.0});
    CHECK(std::abs(plus.amps[0]) == 1.0);
    CHECK(std::abs(minus.amps[0]) == 1.0);
    CHECK(concurrence(plus) == 0.0);
  }
  {
    const auto [plus, minus] = build_swap_outputs({0.6, 0.0}, {0.8, 0.0});
    CHECK(plus.amps[3] == Complex(0.8, 0.0));
    CHECK(minus.amps[3] == Complex(-0.8, 0.0));
    CHECK_CLOSE(concurrence(plus), 0.96, 1e-12);
    CHECK_CLOSE(concurrence(minus), 0.96, 1e-12);
  }
}

TEST_CASE("build_swap_outputs: rejects non-normalized pairs") {
  bool threw = false;
  try {
    build_swap_outputs({0.9, 0.0}, {0.8, 0.0});
  } catch (const Error& e) {
    threw = true;
    CHECK(e.code() == ErrorCode::NotNormalized);
  }
  CHECK(threw);
}

TEST_CASE("concurrence: formula matches the purity oracle") {
  std::mt19937_64 rng(61);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    TwoQubitState s;
    double total = 0.0;
    for (auto& a : s.amps) {
      a = {g(rng), g(rng)};
      total += std::norm(a);
    }
    for (auto& a : s.amps) a /= std::sqrt(total);
    CHECK_CLOSE(concurrence(s), concurrence_via_purity(s), 1e-12);
  }
}

TEST_CASE("extend_swap_family: t = 0 collapses to the duplicated base pair") {
  const ControlParams p{1.0, 2.0, kPi / 3};
  const auto family = extend_swap_family(p, 0.0, {0.6, 0.0}, {0.8, 0.0});
  const auto [plus, minus] = build_swap_outputs({0.6, 0.0}, {0.8, 0.0});
  for (int k = 0; k < 4; ++k) {
    const TwoQubitState& want = (k < 2) ? plus : minus;
    for (int i = 0; i < 4; ++i)
      CHECK_CLOSE(std::abs(family[k].amps[i] - want.amps[i]), 0.0, 1e-15);
  }
}

TEST_CASE("extend_swap_family: complete flip moves the support") {
  const ControlParams p{1.0, 2.0, std::acos(0.5)};
  const double t = kPi / std::sqrt(3.0);  // wb t = pi
  const auto family = extend_swap_family(p, t, {0.6, 0.0}, {0.8, 0.0});
  // base 1 amplitudes move from {|00>,|11>} to {|10>,|01>} up to phases
  const TwoQubitState& flipped = family[0];
  CHECK_CLOSE(std::abs(flipped.amps[0]), 0.0, 1e-12);
  CHECK_CLOSE(std::abs(flipped.amps[3]), 0.0, 1e-12);
  CHECK_CLOSE(std::abs(flipped.amps[2]), 0.6, 1e-12);
  CHECK_CLOSE(std::abs(flipped.amps[1]), 0.8, 1e-12);
}

TEST_CASE("extend_swap_family: normalization and concurrence invariance") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double phi = 2.0 * kPi * u(rng);
    const double mag = u(rng);
    const Complex a{mag * std::cos(phi), mag * std::sin(phi)};
    const double b_mag = std::sqrt(1.0 - std::norm(a));
    const Complex b{b_mag * std::cos(3.0 * phi), b_mag * std::sin(3.0 * phi)};
    const ControlParams p = testutil::random_params(rng, 0.3, 4.0, 6.0);
    const double t = 8.0 * u(rng);
    const auto family = extend_swap_family(p, t, a, b);
    const auto [plus, minus] = build_swap_outputs(a, b);
    const double base_concurrence = concurrence(plus);
    CHECK_CLOSE(concurrence(minus), base_concurrence, 1e-12);
    for (int k = 0; k < 4; ++k) {
      CHECK_CLOSE(total_norm(family[k]), 1.0, 1e-12);
      CHECK_CLOSE(concurrence(family[k]), base_concurrence, 1e-12);
    }
  }
}

TEST_CASE("extend_swap_family: particle selection flag") {
  const ControlParams p{1.0, 2.0, std::acos(0.5)};
  const double t = kPi / std::sqrt(3.0);
  const auto on3 = extend_swap_family(p, t, {0.6, 0.0}, {0.8, 0.0}, 3);
  // flipping particle 3 sends |00> -> |01| and |11> -> |10> instead
  CHECK_CLOSE(std::abs(on3[0].amps[1]), 0.6, 1e-12);
  CHECK_CLOSE(std::abs(on3[0].amps[2]), 0.8, 1e-12);
  CHECK_THROWS_AS(extend_swap_family(p, t, {0.6, 0.0}, {0.8, 0.0}, 1), Error);
}

TEST_CASE("extend_swap_family: the four family members are generally distinct") {
  const ControlParams p{1.0, 3.0, 0.9};  // off the manifold
  const auto family = extend_swap_family(p, 0.7, {0.6, 0.0}, {0.8, 0.0});
  double spread = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      double d = 0.0;
      for (int k = 0; k < 4; ++k)
        d = std::max(d, std::abs(family[i].amps[k] - family[j].amps[k]));
      spread = std::max(spread, d);
      CHECK(d > 1e-3);  // all pairwise distinct
    }
  CHECK(spread > 0.1);
}
