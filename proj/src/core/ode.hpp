#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/types.hpp"

namespace naqc {

// Adaptive integrator controls. tol is used as both absolute and relative
// local error tolerance; it must lie in (0, 1e-4]. A step rejected below
// min_step raises StepUnderflow.
struct OdeOptions {
  double tol = 1e-9;
  double min_step = 1e-12;
};

struct OdeResult {
  QubitState psi;
  double norm = 0.0;  // final |psi|, reported, never silently corrected
  std::uint64_t steps = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<QubitState> states;
  std::vector<double> norms;
  std::uint64_t steps = 0;
};

// Integrates i dpsi/dt = H(t) psi from t = 0 with an embedded
// Dormand-Prince 5(4) pair. psi0 must be normalized; t_end >= 0.
OdeResult ode_propagate(const ControlParams& p, const QubitState& psi0, double t_end,
                        const OdeOptions& options = {});

// Same integration, sampled exactly at the given non-decreasing times >= 0.
Trajectory ode_trajectory(const ControlParams& p, const QubitState& psi0,
                          std::span<const double> times,
                          const OdeOptions& options = {});

}  // namespace naqc
