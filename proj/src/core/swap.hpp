#pragma once

#include <array>
#include <utility>

#include "core/types.hpp"

namespace naqc {

// Amplitudes over {|00>, |01>, |10>, |11>} for particles 2 and 3 (particle 2
// is the first tensor factor).
struct TwoQubitState {
  std::array<Complex, 4> amps{};
};

// The two swap outputs a|00> + b|11> and a|00> - b|11>. Requires
// |a|^2 + |b|^2 = 1 (NotNormalized otherwise).
std::pair<TwoQubitState, TwoQubitState> build_swap_outputs(Complex a, Complex b);

// Drives one particle of each base state with the closed-form propagator in
// both initial-condition labellings, extending the pair to a four-state
// family: {base1, base2} x {Up-labelled U, Down-labelled X U X}. particle
// selects which factor the field acts on (2 or 3).
std::array<TwoQubitState, 4> extend_swap_family(const ControlParams& p, double t,
                                                Complex a, Complex b, int particle = 2);

// Pure-state concurrence 2|a00 a11 - a01 a10|, in [0, 1].
double concurrence(const TwoQubitState& s);

}  // namespace naqc
