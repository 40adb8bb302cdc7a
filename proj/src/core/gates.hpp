#pragma once

#include "core/dynamics.hpp"
#include "core/types.hpp"

namespace naqc {

enum class GateKind { Not, Z, Hadamard };

// Literal solves the printed timing conditions on the amplitudes exactly as
// stated; UpToGlobalPhase maximizes fidelity to the nominal gate output
// instead, ignoring a global phase.
enum class SolveMode { Literal, UpToGlobalPhase };

enum class SolveStatus { Solved, Infeasible, NotFound };

// Why a literal solve is infeasible: the cosine target must be real in
// [-1, 1], the sine target of the form i*s with s real in [-1, 1], and the
// pair must satisfy cos^2 + s^2 = 1.
enum class InfeasibleReason { None, CosTargetInvalid, SinTargetInvalid, PairInconsistent };

struct SynthesisResult {
  SolveStatus status = SolveStatus::Infeasible;
  InfeasibleReason diagnosis = InfeasibleReason::None;
  ControlParams params;
  double tau = 0.0;
  QubitState predicted_output;
  double residual = 0.0;  // max condition violation, or infidelity for searches
  Mat2 hold_hamiltonian{};  // H frozen at tau
};

struct ParameterBounds {
  double omega0_min = 1.0, omega0_max = 1.0;
  double omega_min = 2.0, omega_max = 2.0;
  double theta_min = 0.0, theta_max = kPi / 2.0;
  double t_min = 0.0, t_max = 10.0;
};

// Deterministic coarse-to-fine search: grids on omega0/omega/theta, a grid
// plus golden-section refinement on t. Ties break by lexicographic order of
// the grid indices.
struct SearchGrid {
  int n_omega0 = 5;
  int n_omega = 9;
  int n_theta = 13;
  int n_t = 96;
  int refine_iters = 200;
};

struct GateVerification {
  double analytic_fidelity = 0.0;  // |<target|closed-form output>|
  double ode_fidelity = 0.0;       // population overlap of the ODE run vs target
  double phase_offset_c0 = 0.0;    // measured ODE-vs-closed-form phase per component
  double phase_offset_c1 = 0.0;
};

// theta = arccos(omega0/omega), valid for 0 < omega0 <= omega. On this
// manifold omega*sin(theta) = rabi_frequency exactly, so the Up-branch
// coefficients reduce to (cos(wb t/2), i sin(wb t/2)).
double manifold_theta(double omega0, double omega);

// Nominal output amplitudes of the gate applied to the input pair.
QubitState gate_target(GateKind kind, const QubitState& input);

// Smallest tau >= 0 meeting both timing conditions of the chosen gate on the
// manifold, or Infeasible with a diagnosis. Fails with DegenerateDrive when
// the Rabi frequency vanishes (omega == omega0).
SynthesisResult solve_gate_time(GateKind kind, const QubitState& input, double omega0,
                                double omega, SolveMode mode = SolveMode::Literal);

// Searches the (omega0, omega, theta, t) box for a drive mapping input to
// target, minimizing 1 - fidelity^2. Solved when the infidelity reaches
// 1e-6; otherwise NotFound with the best point found.
SynthesisResult synthesize_general(const QubitState& input, const QubitState& target,
                                   const ParameterBounds& bounds,
                                   const SearchGrid& grid = {});

// Confronts a solved result with the Schrodinger oracle: forward closed-form
// evaluation against the target, ODE populations in the Diagonalized basis
// against the target, and the measured per-component phase offsets between
// the two routes. initial_logical is the starting coefficient pair ((1,0)
// for the named gates; the searched input for synthesize_general results).
GateVerification verify_gate(const SynthesisResult& result,
                             const QubitState& initial_logical,
                             const QubitState& target);

}  // namespace naqc
