#include "core/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace naqc {

namespace {

constexpr Complex kI{0.0, 1.0};

struct EigenSystem {
  double lambda0 = 0.0;  // larger eigenvalue
  double lambda1 = 0.0;
  QubitState v0;
  QubitState v1;
};

// Eigenvector of a Hermitian 2x2 for a known eigenvalue. Of the two
// algebraically equivalent forms (b, lambda - a) and (lambda - d, conj(b)),
// picks the one whose difference factor is the larger, which avoids the
// cancellation that ruins accuracy near the diagonal limit.
QubitState hermitian_eigenvector(const Mat2& h, double lambda) {
  const double a = h.m00.real();
  const double d = h.m11.real();
  const Complex b = h.m01;
  QubitState v;
  if (std::abs(lambda - d) >= std::abs(lambda - a)) {
    v = {Complex(lambda - d, 0.0), std::conj(b)};
  } else {
    v = {b, Complex(lambda - a, 0.0)};
  }
  if (norm_sq(v) == 0.0) {
    // fully degenerate matrix (cannot happen for omega0 > 0)
    return {Complex(1.0, 0.0), Complex(0.0, 0.0)};
  }
  return normalized(v);
}

EigenSystem hermitian_eigensystem(const Mat2& h) {
  const double a = h.m00.real();
  const double d = h.m11.real();
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), std::abs(h.m01));
  EigenSystem es;
  es.lambda0 = mean + radius;
  es.lambda1 = mean - radius;
  es.v0 = hermitian_eigenvector(h, es.lambda0);
  es.v1 = hermitian_eigenvector(h, es.lambda1);
  return es;
}

// Rotates the larger-magnitude component onto the positive real axis.
QubitState fix_phase(const QubitState& v) {
  const Complex pivot = (std::abs(v.a0) >= std::abs(v.a1)) ? v.a0 : v.a1;
  const double mag = std::abs(pivot);
  if (mag == 0.0) return v;
  const Complex u = std::conj(pivot) / mag;
  return {v.a0 * u, v.a1 * u};
}

}  // namespace

Mat2 hamiltonian(const ControlParams& p, double t) {
  validate(p);
  const double half = 0.5 * p.omega0;
  const Complex off = half * std::sin(p.theta) * std::exp(-kI * (p.omega * t));
  const double diag = half * std::cos(p.theta);
  return {Complex(diag, 0.0), off, std::conj(off), Complex(-diag, 0.0)};
}

Mat2 hamiltonian_dot(const ControlParams& p, double t) {
  validate(p);
  const double g = 0.5 * p.omega0 * p.omega * std::sin(p.theta);
  const Complex off = -kI * g * std::exp(-kI * (p.omega * t));
  return {Complex(0.0, 0.0), off, std::conj(off), Complex(0.0, 0.0)};
}

EigenPair instantaneous_basis(const ControlParams& p, double t, BasisMode mode) {
  validate(p);
  EigenPair pair;
  pair.mode = mode;
  pair.e0 = 0.5 * p.omega0;
  pair.e1 = -0.5 * p.omega0;
  if (mode == BasisMode::Ansatz) {
    const double s = std::sin(0.5 * p.theta);
    const double c = std::cos(0.5 * p.theta);
    const Complex em = std::exp(-kI * (0.5 * p.omega * t));
    const Complex ep = std::exp(kI * (0.5 * p.omega * t));
    pair.state0 = {em * s, ep * c};
    pair.state1 = {ep * s, -em * c};
    return pair;
  }
  const EigenSystem es = hermitian_eigensystem(hamiltonian(p, t));
  pair.e0 = es.lambda0;
  pair.e1 = es.lambda1;
  pair.state0 = fix_phase(es.v0);
  pair.state1 = fix_phase(es.v1);
  return pair;
}

void align_with(EigenPair& cur, const EigenPair& prev) {
  if (inner(prev.state0, cur.state0).real() < 0.0) {
    cur.state0 = {-cur.state0.a0, -cur.state0.a1};
  }
  if (inner(prev.state1, cur.state1).real() < 0.0) {
    cur.state1 = {-cur.state1.a0, -cur.state1.a1};
  }
}

double rabi_frequency(const ControlParams& p) {
  validate(p);
  const double sq = p.omega0 * p.omega0 + p.omega * p.omega -
                    2.0 * p.omega0 * p.omega * std::cos(p.theta);
  return std::sqrt(std::max(sq, 0.0));
}

double adiabaticity_parameter(const ControlParams& p) {
  validate(p);
  return 0.5 * (p.omega / p.omega0) * std::sin(p.theta);
}

double adiabaticity_ratio_numeric(const ControlParams& p, double t) {
  const EigenPair basis = instantaneous_basis(p, t, BasisMode::Diagonalized);
  const Mat2 hd = hamiltonian_dot(p, t);
  const Complex element = inner(basis.state0, apply(hd, basis.state1));
  const double gap = basis.e0 - basis.e1;
  return std::abs(element) / (gap * gap);
}

AdiabaticityReport assess_adiabaticity(const ControlParams& p,
                                       std::span<const double> times,
                                       double threshold) {
  AdiabaticityReport report;
  report.closed_form = adiabaticity_parameter(p);
  report.threshold = threshold;
  report.numeric_max = times.empty() ? adiabaticity_ratio_numeric(p, 0.0) : 0.0;
  for (const double t : times) {
    report.numeric_max = std::max(report.numeric_max, adiabaticity_ratio_numeric(p, t));
  }
  report.is_adiabatic = report.closed_form < threshold;
  return report;
}

std::pair<Complex, Complex> analytic_coefficients(const ControlParams& p, double t,
                                                  Branch branch) {
  validate(p);
  if (!(t >= 0.0) || !std::isfinite(t))
    fail(ErrorCode::InvalidArgument, "t must be non-negative and finite");
  const double wb = rabi_frequency(p);
  if (wb == 0.0) {
    // removable degeneracy: both numerators vanish with wb
    return (branch == Branch::Up)
               ? std::pair<Complex, Complex>{Complex(1.0, 0.0), Complex(0.0, 0.0)}
               : std::pair<Complex, Complex>{Complex(0.0, 0.0), Complex(1.0, 0.0)};
  }
  const double detuning = (p.omega0 - p.omega * std::cos(p.theta)) / wb;
  const double coupling = (p.omega * std::sin(p.theta)) / wb;
  const double x = 0.5 * wb * t;
  const double c = std::cos(x);
  const double s = std::sin(x);
  if (branch == Branch::Up) {
    return {Complex(c, -detuning * s), Complex(0.0, coupling * s)};
  }
  return {Complex(0.0, coupling * s), Complex(c, detuning * s)};
}

Mat2 logical_propagator(const ControlParams& p, double t) {
  const auto [a0, a1] = analytic_coefficients(p, t, Branch::Up);
  const auto [b0, b1] = analytic_coefficients(p, t, Branch::Down);
  return {a0, b0, a1, b1};
}

BranchCoefficients coefficient_series(const ControlParams& p,
                                      std::span<const double> times, Branch branch) {
  BranchCoefficients series;
  series.branch = branch;
  series.times.reserve(times.size());
  series.c0.reserve(times.size());
  series.c1.reserve(times.size());
  for (const double t : times) {
    const auto [c0, c1] = analytic_coefficients(p, t, branch);
    series.times.push_back(t);
    series.c0.push_back(c0);
    series.c1.push_back(c1);
  }
  return series;
}

std::pair<Complex, Complex> project(const QubitState& psi, const EigenPair& basis) {
  const double overlap = std::abs(inner(basis.state0, basis.state1));
  if (overlap > 1e-10)
    fail(ErrorCode::NonOrthogonalBasis,
         "basis states are not orthogonal (|<0|1>| = " + std::to_string(overlap) + ")");
  return {inner(basis.state0, psi), inner(basis.state1, psi)};
}

QubitState from_basis(const EigenPair& basis, Complex c0, Complex c1) {
  return {c0 * basis.state0.a0 + c1 * basis.state1.a0,
          c0 * basis.state0.a1 + c1 * basis.state1.a1};
}

double fidelity(const QubitState& psi, const QubitState& phi) {
  require_normalized(psi, 1e-6, "psi");
  require_normalized(phi, 1e-6, "phi");
  return std::min(1.0, std::abs(inner(psi, phi)));
}

}  // namespace naqc
