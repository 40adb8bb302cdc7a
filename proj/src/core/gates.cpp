#include "core/gates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "core/ode.hpp"

namespace naqc {

namespace {

constexpr double kFeasibilityTol = 1e-9;
constexpr double kSolvedInfidelity = 1e-6;
constexpr double kSqrt1_2 = 0.70710678118654752440;

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

// Timing conditions of one gate, in the form cos(wb tau/2) = cos_target and
// i sin(wb tau/2) = sin_target.
struct Conditions {
  Complex cos_target;
  Complex sin_target;
};

Conditions gate_conditions(GateKind kind, const QubitState& in) {
  switch (kind) {
    case GateKind::Not:
      return {in.a1, in.a0};
    case GateKind::Z:
      return {in.a0, -in.a1};
    case GateKind::Hadamard:
      return {(in.a0 + in.a1) * kSqrt1_2, (in.a0 - in.a1) * kSqrt1_2};
  }
  fail(ErrorCode::InvalidArgument, "unknown gate kind");
}

double infidelity(const QubitState& target, const QubitState& out) {
  const double f = std::abs(inner(target, out));
  return std::max(0.0, 1.0 - f * f);
}

// Golden-section minimization that tracks the best sampled point, so a
// non-unimodal objective still cannot come back worse than the seed.
void golden_refine(const std::function<double(double)>& f, double a, double b,
                   int iters, double& t_best, double& f_best) {
  constexpr double kGolden = 0.61803398874989485;
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f(c);
  double fd = f(d);
  auto consider = [&](double t, double v) {
    if (v < f_best) {
      f_best = v;
      t_best = t;
    }
  };
  consider(c, fc);
  consider(d, fd);
  for (int i = 0; i < iters && (b - a) > 1e-14 * (1.0 + std::abs(a) + std::abs(b));
       ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
}

double grid_value(double lo, double hi, int k, int n) {
  if (n <= 1 || k <= 0) return lo;
  if (k >= n - 1) return hi;
  return lo + (hi - lo) * (static_cast<double>(k) / (n - 1));
}

}  // namespace

double manifold_theta(double omega0, double omega) {
  if (!(omega0 > 0.0) || !std::isfinite(omega0) || !(omega > 0.0) ||
      !std::isfinite(omega))
    fail(ErrorCode::InvalidArgument, "manifold requires 0 < omega0 and 0 < omega");
  if (omega0 > omega)
    fail(ErrorCode::InvalidManifold,
         "cos(theta) = omega0/omega would exceed 1 (omega0 > omega)");
  return std::acos(omega0 / omega);
}

QubitState gate_target(GateKind kind, const QubitState& input) {
  switch (kind) {
    case GateKind::Not:
      return {input.a1, input.a0};
    case GateKind::Z:
      return {input.a0, -input.a1};
    case GateKind::Hadamard:
      return {(input.a0 + input.a1) * kSqrt1_2, (input.a0 - input.a1) * kSqrt1_2};
  }
  fail(ErrorCode::InvalidArgument, "unknown gate kind");
}

SynthesisResult solve_gate_time(GateKind kind, const QubitState& input, double omega0,
                                double omega, SolveMode mode) {
  require_normalized(input, 1e-6, "gate input");
  const double theta = manifold_theta(omega0, omega);
  const ControlParams params{omega0, omega, theta};
  const double wb = rabi_frequency(params);
  if (wb == 0.0)
    fail(ErrorCode::DegenerateDrive, "rabi frequency vanishes (omega == omega0)");

  SynthesisResult result;
  result.params = params;

  double x = 0.0;  // wb tau / 2
  if (mode == SolveMode::Literal) {
    const Conditions cond = gate_conditions(kind, input);
    if (std::abs(cond.cos_target.imag()) > kFeasibilityTol ||
        std::abs(cond.cos_target.real()) > 1.0 + kFeasibilityTol) {
      result.diagnosis = InfeasibleReason::CosTargetInvalid;
      return result;
    }
    if (std::abs(cond.sin_target.real()) > kFeasibilityTol ||
        std::abs(cond.sin_target.imag()) > 1.0 + kFeasibilityTol) {
      result.diagnosis = InfeasibleReason::SinTargetInvalid;
      return result;
    }
    const double c = clamp_unit(cond.cos_target.real());
    const double s = clamp_unit(cond.sin_target.imag());
    if (std::abs(c * c + s * s - 1.0) > kFeasibilityTol) {
      result.diagnosis = InfeasibleReason::PairInconsistent;
      return result;
    }
    x = std::atan2(s, c);
    if (x < 0.0) x += 2.0 * kPi;
    result.predicted_output = {Complex(std::cos(x), 0.0), Complex(0.0, std::sin(x))};
    result.residual = std::max(std::abs(result.predicted_output.a0 - cond.cos_target),
                               std::abs(result.predicted_output.a1 - cond.sin_target));
    result.status = SolveStatus::Solved;
  } else {
    // Fidelity to the nominal output is P + Q cos(2x) + R sin(2x); take the
    // smallest non-negative maximizer (period pi).
    const QubitState target = gate_target(kind, input);
    const Complex u = std::conj(target.a0);
    const Complex v = Complex(0.0, 1.0) * std::conj(target.a1);
    const double pu = std::norm(u), pv = std::norm(v);
    const double q_coef = 0.5 * (pu - pv);
    const double r_coef = (u * std::conj(v)).real();
    const double peak = 0.5 * (pu + pv) + std::hypot(q_coef, r_coef);
    x = 0.5 * std::atan2(r_coef, q_coef);
    if (x < 0.0) x += kPi;
    result.predicted_output = {Complex(std::cos(x), 0.0), Complex(0.0, std::sin(x))};
    result.residual = std::max(0.0, 1.0 - peak);
    result.status = result.residual <= kFeasibilityTol ? SolveStatus::Solved
                                                       : SolveStatus::NotFound;
  }
  result.tau = 2.0 * x / wb;
  result.hold_hamiltonian = hamiltonian(params, result.tau);
  return result;
}

SynthesisResult synthesize_general(const QubitState& input, const QubitState& target,
                                   const ParameterBounds& bounds,
                                   const SearchGrid& grid) {
  require_normalized(input, 1e-6, "input");
  require_normalized(target, 1e-6, "target");
  if (!(bounds.omega0_min > 0.0) || bounds.omega0_max < bounds.omega0_min ||
      bounds.omega_min < 0.0 || bounds.omega_max < bounds.omega_min ||
      bounds.theta_min < 0.0 || bounds.theta_max > kPi ||
      bounds.theta_max < bounds.theta_min || bounds.t_min < 0.0 ||
      bounds.t_max < bounds.t_min)
    fail(ErrorCode::InvalidArgument, "invalid parameter bounds");
  if (grid.n_omega0 < 1 || grid.n_omega < 1 || grid.n_theta < 1 || grid.n_t < 1)
    fail(ErrorCode::InvalidArgument, "grid sizes must be >= 1");

  double best_inf = std::numeric_limits<double>::infinity();
  ControlParams best_params;
  double best_t = 0.0;

  for (int i0 = 0; i0 < grid.n_omega0; ++i0) {
    const double w0 = grid_value(bounds.omega0_min, bounds.omega0_max, i0, grid.n_omega0);
    for (int iw = 0; iw < grid.n_omega; ++iw) {
      const double w = grid_value(bounds.omega_min, bounds.omega_max, iw, grid.n_omega);
      for (int ith = 0; ith < grid.n_theta; ++ith) {
        const double th = grid_value(bounds.theta_min, bounds.theta_max, ith, grid.n_theta);
        const ControlParams params{w0, w, th};
        const auto objective = [&](double t) {
          return infidelity(target, apply(logical_propagator(params, t), input));
        };
        double local_best_t = bounds.t_min;
        double local_best = objective(bounds.t_min);
        int local_best_k = 0;
        for (int kt = 1; kt < grid.n_t; ++kt) {
          const double t = grid_value(bounds.t_min, bounds.t_max, kt, grid.n_t);
          const double v = objective(t);
          if (v < local_best) {
            local_best = v;
            local_best_t = t;
            local_best_k = kt;
          }
        }
        if (grid.n_t > 1) {
          const double step = (bounds.t_max - bounds.t_min) / (grid.n_t - 1);
          const double lo = std::max(bounds.t_min, grid_value(bounds.t_min, bounds.t_max,
                                                              local_best_k - 1, grid.n_t));
          const double hi = std::min(bounds.t_max, grid_value(bounds.t_min, bounds.t_max,
                                                              local_best_k + 1, grid.n_t));
          if (hi > lo && step > 0.0)
            golden_refine(objective, lo, hi, grid.refine_iters, local_best_t, local_best);
        }
        if (local_best < best_inf) {
          best_inf = local_best;
          best_params = params;
          best_t = local_best_t;
        }
      }
    }
  }

  SynthesisResult result;
  result.params = best_params;
  result.tau = best_t;
  result.predicted_output = apply(logical_propagator(best_params, best_t), input);
  result.residual = best_inf;
  result.hold_hamiltonian = hamiltonian(best_params, best_t);
  result.status =
      best_inf <= kSolvedInfidelity ? SolveStatus::Solved : SolveStatus::NotFound;
  return result;
}

GateVerification verify_gate(const SynthesisResult& result,
                             const QubitState& initial_logical,
                             const QubitState& target) {
  require_normalized(initial_logical, 1e-6, "initial_logical");
  require_normalized(target, 1e-6, "target");
  GateVerification v;

  const QubitState forward =
      apply(logical_propagator(result.params, result.tau), initial_logical);
  v.analytic_fidelity = fidelity(forward, target);

  const EigenPair basis0 =
      instantaneous_basis(result.params, 0.0, BasisMode::Diagonalized);
  const QubitState psi0 = from_basis(basis0, initial_logical.a0, initial_logical.a1);
  const OdeResult ode = ode_propagate(result.params, psi0, result.tau);
  const EigenPair basis_tau =
      instantaneous_basis(result.params, result.tau, BasisMode::Diagonalized);
  const auto [c0, c1] = project(ode.psi, basis_tau);

  const double p0 = std::norm(target.a0), p1 = std::norm(target.a1);
  const double q0 = std::norm(c0), q1 = std::norm(c1);
  v.ode_fidelity = std::sqrt(p0 * q0) + std::sqrt(p1 * q1);

  v.phase_offset_c0 = (std::abs(forward.a0) > 1e-9 && std::abs(c0) > 1e-9)
                          ? std::arg(c0 * std::conj(forward.a0))
                          : 0.0;
  v.phase_offset_c1 = (std::abs(forward.a1) > 1e-9 && std::abs(c1) > 1e-9)
                          ? std::arg(c1 * std::conj(forward.a1))
                          : 0.0;
  return v;
}

}  // namespace naqc
