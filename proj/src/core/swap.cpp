#include "core/swap.hpp"

#include <algorithm>
#include <cmath>

#include "core/dynamics.hpp"

namespace naqc {

namespace {

TwoQubitState apply_local(const TwoQubitState& s, const Mat2& u, int particle) {
  TwoQubitState out;
  if (particle == 2) {
    // first factor: amps[2i + j] with i the particle-2 bit
    for (int j = 0; j < 2; ++j) {
      out.amps[j] = u.m00 * s.amps[j] + u.m01 * s.amps[2 + j];
      out.amps[2 + j] = u.m10 * s.amps[j] + u.m11 * s.amps[2 + j];
    }
  } else {
    for (int i = 0; i < 2; ++i) {
      out.amps[2 * i] = u.m00 * s.amps[2 * i] + u.m01 * s.amps[2 * i + 1];
      out.amps[2 * i + 1] = u.m10 * s.amps[2 * i] + u.m11 * s.amps[2 * i + 1];
    }
  }
  return out;
}

}  // namespace

std::pair<TwoQubitState, TwoQubitState> build_swap_outputs(Complex a, Complex b) {
  const double total = std::norm(a) + std::norm(b);
  if (std::abs(total - 1.0) > 1e-9)
    fail(ErrorCode::NotNormalized, "|a|^2 + |b|^2 must equal 1");
  TwoQubitState plus;
  plus.amps = {a, Complex(0.0), Complex(0.0), b};
  TwoQubitState minus;
  minus.amps = {a, Complex(0.0), Complex(0.0), -b};
  return {plus, minus};
}

std::array<TwoQubitState, 4> extend_swap_family(const ControlParams& p, double t,
                                                Complex a, Complex b, int particle) {
  if (particle != 2 && particle != 3)
    fail(ErrorCode::InvalidArgument, "particle must be 2 or 3");
  const auto [base1, base2] = build_swap_outputs(a, b);
  const Mat2 up = logical_propagator(p, t);
  const Mat2 down{up.m11, up.m10, up.m01, up.m00};  // 0 <-> 1 relabelled drive
  return {apply_local(base1, up, particle), apply_local(base1, down, particle),
          apply_local(base2, up, particle), apply_local(base2, down, particle)};
}

double concurrence(const TwoQubitState& s) {
  return std::min(
      1.0, 2.0 * std::abs(s.amps[0] * s.amps[3] - s.amps[1] * s.amps[2]));
}

}  // namespace naqc
