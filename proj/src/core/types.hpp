#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace naqc {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Failure modes surfaced by the library. The C API maps these one-to-one
// onto status codes.
enum class ErrorCode {
  InvalidArgument,
  NotNormalized,
  NonOrthogonalBasis,
  EmptyBranch,
  InconsistentRecord,
  InvalidManifold,
  DegenerateDrive,
  StepUnderflow,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

// Rotating-field drive: Larmor frequency omega0 = gamma*B, rotation rate
// omega of the transverse field component, polar angle theta of the field
// axis. Frequencies in rad per unit time; the library is unit-agnostic.
struct ControlParams {
  double omega0 = 1.0;
  double omega = 0.0;
  double theta = 0.0;
};

// Spin-1/2 amplitude pair (a0, a1) over the z basis {|0>, |1>}.
struct QubitState {
  Complex a0{1.0, 0.0};
  Complex a1{0.0, 0.0};
};

// Dense 2x2 complex matrix, row major.
struct Mat2 {
  Complex m00, m01, m10, m11;
};

enum class Branch { Up, Down };

// Instantaneous-basis flavours:
//   Ansatz       -- the symmetric half-angle / half-phase closed form
//                   (e^{-i w t/2} sin(th/2), e^{i w t/2} cos(th/2)) and its
//                   partner, kept verbatim for comparison. Not an eigenpair
//                   of H(t) for general theta, and generally not orthogonal.
//   Diagonalized -- exact eigenvectors of H(t), ordered E0 = +omega0/2
//                   first, phase fixed so the larger-magnitude component is
//                   real and positive.
enum class BasisMode { Ansatz, Diagonalized };

inline Complex inner(const QubitState& u, const QubitState& v) {
  return std::conj(u.a0) * v.a0 + std::conj(u.a1) * v.a1;
}

inline double norm_sq(const QubitState& q) {
  return std::norm(q.a0) + std::norm(q.a1);
}

inline double norm(const QubitState& q) { return std::sqrt(norm_sq(q)); }

inline QubitState normalized(const QubitState& q) {
  const double n = norm(q);
  if (n == 0.0) fail(ErrorCode::NotNormalized, "cannot normalize a zero state");
  return {q.a0 / n, q.a1 / n};
}

inline QubitState apply(const Mat2& m, const QubitState& v) {
  return {m.m00 * v.a0 + m.m01 * v.a1, m.m10 * v.a0 + m.m11 * v.a1};
}

inline Mat2 adjoint(const Mat2& m) {
  return {std::conj(m.m00), std::conj(m.m10), std::conj(m.m01), std::conj(m.m11)};
}

inline void validate(const ControlParams& p) {
  if (!(p.omega0 > 0.0) || !std::isfinite(p.omega0))
    fail(ErrorCode::InvalidArgument, "omega0 must be positive and finite");
  if (!(p.omega >= 0.0) || !std::isfinite(p.omega))
    fail(ErrorCode::InvalidArgument, "omega must be non-negative and finite");
  if (!(p.theta >= 0.0 && p.theta <= kPi))
    fail(ErrorCode::InvalidArgument, "theta must lie in [0, pi]");
}

// Checks | |q|^2 - 1 | <= tol. The default is loose enough to accept states
// coming back from the ODE integrator at its coarsest allowed tolerance.
inline void require_normalized(const QubitState& q, double tol = 1e-6,
                               const char* who = "state") {
  if (!(std::abs(norm_sq(q) - 1.0) <= tol))
    fail(ErrorCode::NotNormalized, std::string(who) + " must be normalized");
}

}  // namespace naqc
