#pragma once

#include <span>
#include <utility>
#include <vector>

#include "core/types.hpp"

namespace naqc {

// Instantaneous basis pair of H(t) with energies e0 >= e1. In Diagonalized
// mode H*state_k = e_k*state_k and <state0|state1> = 0 hold to machine
// precision; in Ansatz mode the closed-form vectors are reproduced verbatim
// and those identities generally fail (that discrepancy is measurable by
// design, see instantaneous_basis).
struct EigenPair {
  QubitState state0;
  QubitState state1;
  double e0 = 0.0;
  double e1 = 0.0;
  BasisMode mode = BasisMode::Diagonalized;
};

struct AdiabaticityReport {
  double closed_form = 0.0;   // (omega / 2 omega0) sin(theta)
  double numeric_max = 0.0;   // max over sampled t of |<0|dH/dt|1>| / (E0-E1)^2
  bool is_adiabatic = false;  // closed_form < threshold
  double threshold = 0.0;
};

// Time series of instantaneous-basis coefficients for one branch.
struct BranchCoefficients {
  std::vector<double> times;
  std::vector<Complex> c0;
  std::vector<Complex> c1;
  Branch branch = Branch::Up;
};

// H(t) = (omega0/2) [[cos th, e^{-i w t} sin th], [e^{i w t} sin th, -cos th]].
// Hermitian, traceless, eigenvalues +-omega0/2.
Mat2 hamiltonian(const ControlParams& p, double t);

// dH/dt = (omega0 w / 2) sin th [[0, -i e^{-i w t}], [i e^{i w t}, 0]].
Mat2 hamiltonian_dot(const ControlParams& p, double t);

EigenPair instantaneous_basis(const ControlParams& p, double t, BasisMode mode);

// Sign-aligns `cur` with `prev` (flips state0/state1 if their overlap with
// the previous sample has negative real part). Used when sweeping t so a
// basis series stays continuous.
void align_with(EigenPair& cur, const EigenPair& prev);

// Effective oscillation frequency sqrt(omega0^2 + omega^2 - 2 omega0 omega cos th).
double rabi_frequency(const ControlParams& p);

// Closed-form adiabaticity parameter (omega / 2 omega0) sin th; evolution is
// adiabatic when this is << 1.
double adiabaticity_parameter(const ControlParams& p);

// |<0(t)|dH/dt|1(t)>| / (E0 - E1)^2 evaluated with the Diagonalized basis and
// the analytic dH/dt. Equals adiabaticity_parameter for every t.
double adiabaticity_ratio_numeric(const ControlParams& p, double t);

AdiabaticityReport assess_adiabaticity(const ControlParams& p,
                                       std::span<const double> times,
                                       double threshold);

// Closed-form instantaneous-basis coefficients of the branch started in
// state0 (Up) or state1 (Down) at t = 0:
//   Up:   c0 = cos(wb t/2) - i ((omega0 - w cos th)/wb) sin(wb t/2)
//         c1 = i (w sin th / wb) sin(wb t/2)
//   Down: the mirrored sign pattern.
// The removable wb = 0 point returns the t = 0 values exactly.
std::pair<Complex, Complex> analytic_coefficients(const ControlParams& p, double t,
                                                  Branch branch);

// Unitary whose columns are the Up and Down coefficient pairs; propagates an
// arbitrary initial coefficient pair.
Mat2 logical_propagator(const ControlParams& p, double t);

BranchCoefficients coefficient_series(const ControlParams& p,
                                      std::span<const double> times, Branch branch);

// Expansion coefficients (<state0|psi>, <state1|psi>). Fails with
// NonOrthogonalBasis when |<state0|state1>| > 1e-10 (possible in Ansatz mode).
std::pair<Complex, Complex> project(const QubitState& psi, const EigenPair& basis);

// c0*state0 + c1*state1.
QubitState from_basis(const EigenPair& basis, Complex c0, Complex c1);

// |<psi|phi>|, global-phase insensitive, in [0, 1].
double fidelity(const QubitState& psi, const QubitState& phi);

}  // namespace naqc
