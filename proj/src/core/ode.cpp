#include "core/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "core/dynamics.hpp"

namespace naqc {

namespace {

constexpr Complex kI{0.0, 1.0};

using State = std::array<Complex, 2>;

State operator*(double f, const State& s) { return {f * s[0], f * s[1]}; }
State operator+(const State& x, const State& y) { return {x[0] + y[0], x[1] + y[1]}; }

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// y5 - y4 error weights (b_i - bhat_i), including the FSAL stage.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// Local error is controlled against this fraction of the requested tol.
// The global error of a controlled 5(4) pair grows linearly in the local
// tolerance, so the margin keeps accumulated drift within tol across the
// contract horizon (t_end up to 50/omega0) instead of only per step.
constexpr double kLocalErrorFraction = 0.01;

class Integrator {
 public:
  Integrator(const ControlParams& p, const QubitState& psi0, const OdeOptions& options)
      : params_(p), options_(options), y_{psi0.a0, psi0.a1} {
    validate(p);
    require_normalized(psi0, 1e-6, "psi0");
    if (!(options.tol > 0.0 && options.tol <= 1e-4))
      fail(ErrorCode::InvalidArgument, "tol must lie in (0, 1e-4]");
    if (!(options.min_step > 0.0))
      fail(ErrorCode::InvalidArgument, "min_step must be positive");
    local_tol_ = options.tol * kLocalErrorFraction;
    k1_ = deriv(0.0, y_);
    const double scale = std::max({p.omega0, p.omega, 1e-8});
    h_ = 0.1 / scale;
  }

  void advance_to(double target) {
    if (!(target >= t_) || !std::isfinite(target))
      fail(ErrorCode::InvalidArgument, "times must be non-decreasing and finite");
    while (t_ < target) {
      // the final approach may legitimately clamp below min_step; an
      // adaptive step that small anywhere else is an error
      if (h_ < options_.min_step && target - t_ > options_.min_step)
        fail(ErrorCode::StepUnderflow,
             "adaptive step fell below the configured minimum");
      double h = std::min(h_, target - t_);
      const State k2 = deriv(t_ + c2 * h, y_ + h * (a21 * k1_));
      const State k3 = deriv(t_ + c3 * h, y_ + h * (a31 * k1_ + a32 * k2));
      const State k4 = deriv(t_ + c4 * h, y_ + h * (a41 * k1_ + a42 * k2 + a43 * k3));
      const State k5 = deriv(t_ + c5 * h,
                             y_ + h * (a51 * k1_ + a52 * k2 + a53 * k3 + a54 * k4));
      const State k6 =
          deriv(t_ + h,
                y_ + h * (a61 * k1_ + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const State y5 = y_ + h * (b1 * k1_ + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const State k7 = deriv(t_ + h, y5);  // FSAL
      const State err_vec =
          h * (e1 * k1_ + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      double err = 0.0;
      for (std::size_t i = 0; i < 2; ++i) {
        const double sk =
            local_tol_ + local_tol_ * std::max(std::abs(y_[i]), std::abs(y5[i]));
        const double r = std::abs(err_vec[i]) / sk;
        err += r * r;
      }
      err = std::sqrt(0.5 * err);
      if (!std::isfinite(err)) err = 1e10;

      if (err <= 1.0) {
        t_ += h;
        y_ = y5;
        k1_ = k7;
        ++steps_;
        const double fac =
            std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h_ = h * fac;
      } else {
        const double fac = std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        h_ = h * fac;
      }
    }
  }

  [[nodiscard]] QubitState state() const { return {y_[0], y_[1]}; }
  [[nodiscard]] double state_norm() const {
    return std::sqrt(std::norm(y_[0]) + std::norm(y_[1]));
  }
  [[nodiscard]] std::uint64_t steps() const { return steps_; }

 private:
  State deriv(double t, const State& y) const {
    const Mat2 h = hamiltonian(params_, t);
    return {-kI * (h.m00 * y[0] + h.m01 * y[1]),
            -kI * (h.m10 * y[0] + h.m11 * y[1])};
  }

  ControlParams params_;
  OdeOptions options_;
  double local_tol_ = 0.0;
  State y_;
  State k1_;
  double t_ = 0.0;
  double h_ = 0.0;
  std::uint64_t steps_ = 0;
};

}  // namespace

OdeResult ode_propagate(const ControlParams& p, const QubitState& psi0, double t_end,
                        const OdeOptions& options) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    fail(ErrorCode::InvalidArgument, "t_end must be non-negative and finite");
  Integrator integrator(p, psi0, options);
  integrator.advance_to(t_end);
  return {integrator.state(), integrator.state_norm(), integrator.steps()};
}

Trajectory ode_trajectory(const ControlParams& p, const QubitState& psi0,
                          std::span<const double> times, const OdeOptions& options) {
  for (const double t : times)
    if (!(t >= 0.0) || !std::isfinite(t))
      fail(ErrorCode::InvalidArgument, "sample times must be non-negative and finite");
  Integrator integrator(p, psi0, options);
  Trajectory trajectory;
  trajectory.times.reserve(times.size());
  trajectory.states.reserve(times.size());
  trajectory.norms.reserve(times.size());
  for (const double t : times) {
    integrator.advance_to(t);  // rejects non-monotone input
    trajectory.times.push_back(t);
    trajectory.states.push_back(integrator.state());
    trajectory.norms.push_back(integrator.state_norm());
  }
  trajectory.steps = integrator.steps();
  return trajectory;
}

}  // namespace naqc
