#include "naqc/naqc.h"

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "core/dynamics.hpp"
#include "core/ensemble.hpp"
#include "core/gates.hpp"
#include "core/ode.hpp"
#include "core/swap.hpp"
#include "core/types.hpp"

namespace {

thread_local std::string g_last_error;

naqc_status to_status(naqc::ErrorCode code) {
  using naqc::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument:
      return NAQC_ERROR_INVALID_ARGUMENT;
    case ErrorCode::NotNormalized:
      return NAQC_ERROR_NOT_NORMALIZED;
    case ErrorCode::NonOrthogonalBasis:
      return NAQC_ERROR_NON_ORTHOGONAL_BASIS;
    case ErrorCode::EmptyBranch:
      return NAQC_ERROR_EMPTY_BRANCH;
    case ErrorCode::InconsistentRecord:
      return NAQC_ERROR_INCONSISTENT_RECORD;
    case ErrorCode::InvalidManifold:
      return NAQC_ERROR_INVALID_MANIFOLD;
    case ErrorCode::DegenerateDrive:
      return NAQC_ERROR_DEGENERATE_DRIVE;
    case ErrorCode::StepUnderflow:
      return NAQC_ERROR_STEP_UNDERFLOW;
  }
  return NAQC_ERROR_INTERNAL;
}

template <typename Fn>
naqc_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const naqc::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NAQC_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return NAQC_ERROR_INTERNAL;
  }
}

naqc_status null_pointer(const char* what) {
  g_last_error = std::string(what) + " must not be null";
  return NAQC_ERROR_NULL_POINTER;
}

/* conversions ------------------------------------------------------- */

naqc::Complex from_c(naqc_complex z) { return {z.re, z.im}; }
naqc_complex to_c(naqc::Complex z) { return {z.real(), z.imag()}; }

naqc::ControlParams from_c(const naqc_params& p) { return {p.omega0, p.omega, p.theta}; }

naqc::QubitState from_c(const naqc_qubit& q) { return {from_c(q.a0), from_c(q.a1)}; }
naqc_qubit to_c(const naqc::QubitState& q) { return {to_c(q.a0), to_c(q.a1)}; }

void to_c(const naqc::Mat2& m, naqc_complex out[4]) {
  out[0] = to_c(m.m00);
  out[1] = to_c(m.m01);
  out[2] = to_c(m.m10);
  out[3] = to_c(m.m11);
}

naqc::Branch branch_from(int branch) {
  if (branch != NAQC_BRANCH_UP && branch != NAQC_BRANCH_DOWN)
    naqc::fail(naqc::ErrorCode::InvalidArgument, "branch must be up (0) or down (1)");
  return branch == NAQC_BRANCH_UP ? naqc::Branch::Up : naqc::Branch::Down;
}

naqc::BasisMode mode_from(int mode) {
  if (mode != NAQC_BASIS_ANSATZ && mode != NAQC_BASIS_DIAGONALIZED)
    naqc::fail(naqc::ErrorCode::InvalidArgument, "unknown basis mode");
  return mode == NAQC_BASIS_ANSATZ ? naqc::BasisMode::Ansatz
                                   : naqc::BasisMode::Diagonalized;
}

naqc::GateKind gate_from(int gate) {
  switch (gate) {
    case NAQC_GATE_NOT:
      return naqc::GateKind::Not;
    case NAQC_GATE_Z:
      return naqc::GateKind::Z;
    case NAQC_GATE_HADAMARD:
      return naqc::GateKind::Hadamard;
  }
  naqc::fail(naqc::ErrorCode::InvalidArgument, "unknown gate");
}

naqc::PathSpinState pathspin_from(const naqc_pathspin& s) {
  naqc::PathSpinState out;
  out.up_spin = from_c(s.up_spin);
  out.down_spin = from_c(s.down_spin);
  out.up_amp = from_c(s.up_amp);
  out.down_amp = from_c(s.down_amp);
  out.w_up = s.w_up;
  out.w_down = s.w_down;
  return out;
}

void fill_report(const naqc::ClusterReport& r, naqc_cluster_report* out) {
  out->n_up = r.n_up;
  out->n_down = r.n_down;
  out->logical_up = to_c(r.logical_up);
  out->logical_down = to_c(r.logical_down);
}

void fill_gate_result(const naqc::SynthesisResult& r, naqc_gate_result* out) {
  out->status = static_cast<int>(r.status);
  out->diagnosis = static_cast<int>(r.diagnosis);
  out->params = {r.params.omega0, r.params.omega, r.params.theta};
  out->tau = r.tau;
  out->predicted_output = to_c(r.predicted_output);
  out->residual = r.residual;
  to_c(r.hold_hamiltonian, out->hold_hamiltonian);
}

naqc::SynthesisResult gate_result_from(const naqc_gate_result& r) {
  naqc::SynthesisResult out;
  out.status = static_cast<naqc::SolveStatus>(r.status);
  out.diagnosis = static_cast<naqc::InfeasibleReason>(r.diagnosis);
  out.params = from_c(r.params);
  out.tau = r.tau;
  out.predicted_output = from_c(r.predicted_output);
  out.residual = r.residual;
  out.hold_hamiltonian = {from_c(r.hold_hamiltonian[0]), from_c(r.hold_hamiltonian[1]),
                          from_c(r.hold_hamiltonian[2]), from_c(r.hold_hamiltonian[3])};
  return out;
}

naqc_twoqubit to_c(const naqc::TwoQubitState& s) {
  naqc_twoqubit out;
  for (int i = 0; i < 4; ++i) out.amps[i] = to_c(s.amps[i]);
  return out;
}

naqc::TwoQubitState twoqubit_from(const naqc_twoqubit& s) {
  naqc::TwoQubitState out;
  for (int i = 0; i < 4; ++i) out.amps[i] = from_c(s.amps[i]);
  return out;
}

}  // namespace

struct naqc_trajectory {
  naqc::Trajectory data;
};

struct naqc_cluster_list {
  std::vector<naqc::Cluster> data;
};

extern "C" {

const char* naqc_status_name(naqc_status status) {
  switch (status) {
    case NAQC_OK:
      return "ok";
    case NAQC_ERROR_INVALID_ARGUMENT:
      return "invalid argument";
    case NAQC_ERROR_NOT_NORMALIZED:
      return "state not normalized";
    case NAQC_ERROR_NON_ORTHOGONAL_BASIS:
      return "basis not orthogonal";
    case NAQC_ERROR_EMPTY_BRANCH:
      return "empty branch";
    case NAQC_ERROR_INCONSISTENT_RECORD:
      return "inconsistent conversion record";
    case NAQC_ERROR_INVALID_MANIFOLD:
      return "invalid manifold";
    case NAQC_ERROR_DEGENERATE_DRIVE:
      return "degenerate drive";
    case NAQC_ERROR_STEP_UNDERFLOW:
      return "step underflow";
    case NAQC_ERROR_INFEASIBLE:
      return "infeasible";
    case NAQC_ERROR_NOT_FOUND:
      return "not found";
    case NAQC_ERROR_NULL_POINTER:
      return "null pointer";
    case NAQC_ERROR_OUT_OF_RANGE:
      return "index out of range";
    case NAQC_ERROR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* naqc_last_error_message(void) { return g_last_error.c_str(); }

const char* naqc_version(void) { return "0.1.0"; }

/* core dynamics ----------------------------------------------------- */

naqc_status naqc_hamiltonian(const naqc_params* params, double t, naqc_complex out[4]) {
  if (!params || !out) return null_pointer("params/out");
  return guarded([&] {
    to_c(naqc::hamiltonian(from_c(*params), t), out);
    return NAQC_OK;
  });
}

naqc_status naqc_hamiltonian_dot(const naqc_params* params, double t,
                                 naqc_complex out[4]) {
  if (!params || !out) return null_pointer("params/out");
  return guarded([&] {
    to_c(naqc::hamiltonian_dot(from_c(*params), t), out);
    return NAQC_OK;
  });
}

naqc_status naqc_eigenbasis(const naqc_params* params, double t, int mode,
                            naqc_eigenpair* out) {
  if (!params || !out) return null_pointer("params/out");
  return guarded([&] {
    const naqc::EigenPair pair =
        naqc::instantaneous_basis(from_c(*params), t, mode_from(mode));
    out->state0 = to_c(pair.state0);
    out->state1 = to_c(pair.state1);
    out->e0 = pair.e0;
    out->e1 = pair.e1;
    out->mode = mode;
    return NAQC_OK;
  });
}

naqc_status naqc_rabi_frequency(const naqc_params* params, double* out) {
  if (!params || !out) return null_pointer("params/out");
  return guarded([&] {
    *out = naqc::rabi_frequency(from_c(*params));
    return NAQC_OK;
  });
}

naqc_status naqc_adiabaticity_parameter(const naqc_params* params, double* out) {
  if (!params || !out) return null_pointer("params/out");
  return guarded([&] {
    *out = naqc::adiabaticity_parameter(from_c(*params));
    return NAQC_OK;
  });
}

naqc_status naqc_adiabaticity_ratio(const naqc_params* params, double t, double* out) {
  if (!params || !out) return null_pointer("params/out");
  return guarded([&] {
    *out = naqc::adiabaticity_ratio_numeric(from_c(*params), t);
    return NAQC_OK;
  });
}

naqc_status naqc_assess_adiabaticity(const naqc_params* params, const double* times,
                                     size_t n_times, double threshold,
                                     naqc_adiabaticity_report* out) {
  if (!params || !out || (n_times > 0 && !times)) return null_pointer("params/times/out");
  return guarded([&] {
    const naqc::AdiabaticityReport report = naqc::assess_adiabaticity(
        from_c(*params), std::span<const double>(times, n_times), threshold);
    out->closed_form = report.closed_form;
    out->numeric_max = report.numeric_max;
    out->is_adiabatic = report.is_adiabatic ? 1 : 0;
    out->threshold = report.threshold;
    return NAQC_OK;
  });
}

naqc_status naqc_analytic_coefficients(const naqc_params* params, double t, int branch,
                                       naqc_complex* c0, naqc_complex* c1) {
  if (!params || !c0 || !c1) return null_pointer("params/c0/c1");
  return guarded([&] {
    const auto [v0, v1] =
        naqc::analytic_coefficients(from_c(*params), t, branch_from(branch));
    *c0 = to_c(v0);
    *c1 = to_c(v1);
    return NAQC_OK;
  });
}

naqc_status naqc_project(const naqc_qubit* psi, const naqc_eigenpair* basis,
                         naqc_complex* c0, naqc_complex* c1) {
  if (!psi || !basis || !c0 || !c1) return null_pointer("psi/basis/c0/c1");
  return guarded([&] {
    naqc::EigenPair pair;
    pair.state0 = from_c(basis->state0);
    pair.state1 = from_c(basis->state1);
    pair.e0 = basis->e0;
    pair.e1 = basis->e1;
    pair.mode = mode_from(basis->mode);
    const auto [v0, v1] = naqc::project(from_c(*psi), pair);
    *c0 = to_c(v0);
    *c1 = to_c(v1);
    return NAQC_OK;
  });
}

naqc_status naqc_fidelity(const naqc_qubit* psi, const naqc_qubit* phi, double* out) {
  if (!psi || !phi || !out) return null_pointer("psi/phi/out");
  return guarded([&] {
    *out = naqc::fidelity(from_c(*psi), from_c(*phi));
    return NAQC_OK;
  });
}

/* Schrodinger oracle ------------------------------------------------ */

naqc_status naqc_ode_propagate(const naqc_params* params, const naqc_qubit* psi0,
                               double t_end, double tol, naqc_qubit* psi_out,
                               double* final_norm) {
  if (!params || !psi0 || !psi_out) return null_pointer("params/psi0/psi_out");
  return guarded([&] {
    const naqc::OdeResult result =
        naqc::ode_propagate(from_c(*params), from_c(*psi0), t_end, {tol, 1e-12});
    *psi_out = to_c(result.psi);
    if (final_norm) *final_norm = result.norm;
    return NAQC_OK;
  });
}

naqc_status naqc_ode_trajectory(const naqc_params* params, const naqc_qubit* psi0,
                                const double* times, size_t n_times, double tol,
                                naqc_trajectory** out) {
  if (!params || !psi0 || !out || (n_times > 0 && !times))
    return null_pointer("params/psi0/times/out");
  return guarded([&] {
    auto handle = std::make_unique<naqc_trajectory>();
    handle->data = naqc::ode_trajectory(from_c(*params), from_c(*psi0),
                                        std::span<const double>(times, n_times),
                                        {tol, 1e-12});
    *out = handle.release();
    return NAQC_OK;
  });
}

size_t naqc_trajectory_length(const naqc_trajectory* trajectory) {
  return trajectory ? trajectory->data.times.size() : 0;
}

naqc_status naqc_trajectory_sample(const naqc_trajectory* trajectory, size_t index,
                                   double* t, naqc_qubit* psi, double* norm) {
  if (!trajectory) return null_pointer("trajectory");
  if (index >= trajectory->data.times.size()) {
    g_last_error = "trajectory index out of range";
    return NAQC_ERROR_OUT_OF_RANGE;
  }
  if (t) *t = trajectory->data.times[index];
  if (psi) *psi = to_c(trajectory->data.states[index]);
  if (norm) *norm = trajectory->data.norms[index];
  return NAQC_OK;
}

void naqc_trajectory_free(naqc_trajectory* trajectory) { delete trajectory; }

/* path-spin ensemble ------------------------------------------------ */

naqc_status naqc_adiabatic_split(const naqc_qubit* q, double w_up, double w_down,
                                 double omega0_t, naqc_pathspin* out) {
  if (!q || !out) return null_pointer("q/out");
  return guarded([&] {
    const naqc::PathSpinState s =
        naqc::adiabatic_split(from_c(*q), w_up, w_down, omega0_t);
    out->up_spin = to_c(s.up_spin);
    out->down_spin = to_c(s.down_spin);
    out->up_amp = to_c(s.up_amp);
    out->down_amp = to_c(s.down_amp);
    out->w_up = s.w_up;
    out->w_down = s.w_down;
    return NAQC_OK;
  });
}

naqc_status naqc_branch_probability(const naqc_pathspin* s, int branch, double* out) {
  if (!s || !out) return null_pointer("s/out");
  return guarded([&] {
    *out = naqc::branch_probability(pathspin_from(*s), branch_from(branch));
    return NAQC_OK;
  });
}

naqc_status naqc_cluster_counts(const naqc_pathspin* s, uint64_t n_particles,
                                naqc_cluster_report* out) {
  if (!s || !out) return null_pointer("s/out");
  return guarded([&] {
    fill_report(naqc::cluster_counts(pathspin_from(*s), n_particles), out);
    return NAQC_OK;
  });
}

naqc_status naqc_cluster_counts_sampled(const naqc_pathspin* s, uint64_t n_particles,
                                        uint64_t seed, naqc_cluster_report* out) {
  if (!s || !out) return null_pointer("s/out");
  return guarded([&] {
    fill_report(naqc::cluster_counts_sampled(pathspin_from(*s), n_particles, seed), out);
    return NAQC_OK;
  });
}

naqc_status naqc_converter(const naqc_pathspin* s, int keep, naqc_qubit* out,
                           naqc_conversion_record* record) {
  if (!s || !out || !record) return null_pointer("s/out/record");
  return guarded([&] {
    const auto [state, rec] = naqc::converter_oracle(pathspin_from(*s), branch_from(keep));
    *out = to_c(state);
    record->input = to_c(rec.input);
    record->selected_branch = static_cast<int>(rec.selected_branch);
    record->kept_amp = to_c(rec.kept_amp);
    record->discarded_amp = to_c(rec.discarded_amp);
    record->discarded_state = to_c(rec.discarded_state);
    return NAQC_OK;
  });
}

naqc_status naqc_reverse_converter(const naqc_conversion_record* record,
                                   const naqc_qubit* kept_output, naqc_qubit* out) {
  if (!record || !kept_output || !out) return null_pointer("record/kept_output/out");
  return guarded([&] {
    naqc::ConversionRecord rec;
    rec.input = from_c(record->input);
    rec.selected_branch = branch_from(record->selected_branch);
    rec.kept_amp = from_c(record->kept_amp);
    rec.discarded_amp = from_c(record->discarded_amp);
    rec.discarded_state = from_c(record->discarded_state);
    *out = to_c(naqc::reverse_converter(rec, from_c(*kept_output)));
    return NAQC_OK;
  });
}

naqc_status naqc_multiply(const naqc_params* params, const naqc_qubit* q, double t,
                          double warn_threshold, naqc_qubit* up, naqc_qubit* down,
                          double* p_up, double* p_down, int* adiabatic_warning) {
  if (!params || !q || !up || !down) return null_pointer("params/q/up/down");
  return guarded([&] {
    const naqc::MultiplyResult r =
        naqc::nonadiabatic_multiply(from_c(*params), from_c(*q), t, warn_threshold);
    *up = to_c(r.up_state);
    *down = to_c(r.down_state);
    if (p_up) *p_up = r.p_up;
    if (p_down) *p_down = r.p_down;
    if (adiabatic_warning) *adiabatic_warning = r.adiabatic_warning ? 1 : 0;
    return NAQC_OK;
  });
}

naqc_status naqc_cascade(const naqc_cascade_stage* stages, size_t n_stages,
                         const naqc_qubit* q, double warn_threshold,
                         naqc_cluster_list** out) {
  if (!q || !out || (n_stages > 0 && !stages)) return null_pointer("stages/q/out");
  return guarded([&] {
    std::vector<naqc::CascadeStage> core_stages;
    core_stages.reserve(n_stages);
    for (size_t i = 0; i < n_stages; ++i)
      core_stages.push_back({from_c(stages[i].params), stages[i].t});
    auto handle = std::make_unique<naqc_cluster_list>();
    handle->data = naqc::cascade(core_stages, from_c(*q), warn_threshold);
    *out = handle.release();
    return NAQC_OK;
  });
}

size_t naqc_cluster_list_length(const naqc_cluster_list* clusters) {
  return clusters ? clusters->data.size() : 0;
}

naqc_status naqc_cluster_list_get(const naqc_cluster_list* clusters, size_t index,
                                  naqc_qubit* state, double* weight) {
  if (!clusters) return null_pointer("clusters");
  if (index >= clusters->data.size()) {
    g_last_error = "cluster index out of range";
    return NAQC_ERROR_OUT_OF_RANGE;
  }
  if (state) *state = to_c(clusters->data[index].state);
  if (weight) *weight = clusters->data[index].weight;
  return NAQC_OK;
}

void naqc_cluster_list_free(naqc_cluster_list* clusters) { delete clusters; }

/* gate synthesis ----------------------------------------------------- */

naqc_status naqc_manifold_theta(double omega0, double omega, double* out) {
  if (!out) return null_pointer("out");
  return guarded([&] {
    *out = naqc::manifold_theta(omega0, omega);
    return NAQC_OK;
  });
}

naqc_status naqc_gate_target(int gate, const naqc_qubit* input, naqc_qubit* out) {
  if (!input || !out) return null_pointer("input/out");
  return guarded([&] {
    *out = to_c(naqc::gate_target(gate_from(gate), from_c(*input)));
    return NAQC_OK;
  });
}

naqc_status naqc_solve_gate_time(int gate, const naqc_qubit* input, double omega0,
                                 double omega, int mode, naqc_gate_result* out) {
  if (!input || !out) return null_pointer("input/out");
  return guarded([&] {
    if (mode != NAQC_SOLVE_LITERAL && mode != NAQC_SOLVE_UP_TO_PHASE)
      naqc::fail(naqc::ErrorCode::InvalidArgument, "unknown solve mode");
    const naqc::SynthesisResult result = naqc::solve_gate_time(
        gate_from(gate), from_c(*input), omega0, omega,
        mode == NAQC_SOLVE_LITERAL ? naqc::SolveMode::Literal
                                   : naqc::SolveMode::UpToGlobalPhase);
    fill_gate_result(result, out);
    if (result.status == naqc::SolveStatus::Infeasible) {
      g_last_error = "gate timing conditions are infeasible for this input";
      return NAQC_ERROR_INFEASIBLE;
    }
    if (result.status == naqc::SolveStatus::NotFound) {
      g_last_error = "no drive time reached the requested fidelity";
      return NAQC_ERROR_NOT_FOUND;
    }
    return NAQC_OK;
  });
}

naqc_status naqc_synthesize(const naqc_qubit* input, const naqc_qubit* target,
                            const naqc_synth_bounds* bounds,
                            const naqc_synth_grid* grid, naqc_gate_result* out) {
  if (!input || !target || !bounds || !out)
    return null_pointer("input/target/bounds/out");
  return guarded([&] {
    naqc::ParameterBounds core_bounds{bounds->omega0_min, bounds->omega0_max,
                                      bounds->omega_min,  bounds->omega_max,
                                      bounds->theta_min,  bounds->theta_max,
                                      bounds->t_min,      bounds->t_max};
    naqc::SearchGrid core_grid;
    if (grid)
      core_grid = {grid->n_omega0, grid->n_omega, grid->n_theta, grid->n_t,
                   grid->refine_iters};
    const naqc::SynthesisResult result =
        naqc::synthesize_general(from_c(*input), from_c(*target), core_bounds, core_grid);
    fill_gate_result(result, out);
    if (result.status == naqc::SolveStatus::NotFound) {
      g_last_error = "search exhausted the bounds without reaching the target";
      return NAQC_ERROR_NOT_FOUND;
    }
    return NAQC_OK;
  });
}

naqc_status naqc_verify_gate(const naqc_gate_result* result,
                             const naqc_qubit* initial_logical,
                             const naqc_qubit* target, naqc_gate_verification* out) {
  if (!result || !initial_logical || !target || !out)
    return null_pointer("result/initial_logical/target/out");
  return guarded([&] {
    const naqc::GateVerification v = naqc::verify_gate(
        gate_result_from(*result), from_c(*initial_logical), from_c(*target));
    out->analytic_fidelity = v.analytic_fidelity;
    out->ode_fidelity = v.ode_fidelity;
    out->phase_offset_c0 = v.phase_offset_c0;
    out->phase_offset_c1 = v.phase_offset_c1;
    return NAQC_OK;
  });
}

/* two-qubit swap family ---------------------------------------------- */

naqc_status naqc_swap_outputs(naqc_complex a, naqc_complex b, naqc_twoqubit* plus,
                              naqc_twoqubit* minus) {
  if (!plus || !minus) return null_pointer("plus/minus");
  return guarded([&] {
    const auto [p, m] = naqc::build_swap_outputs(from_c(a), from_c(b));
    *plus = to_c(p);
    *minus = to_c(m);
    return NAQC_OK;
  });
}

naqc_status naqc_swap_family(const naqc_params* params, double t, naqc_complex a,
                             naqc_complex b, int particle, naqc_twoqubit out[4]) {
  if (!params || !out) return null_pointer("params/out");
  return guarded([&] {
    const auto family =
        naqc::extend_swap_family(from_c(*params), t, from_c(a), from_c(b), particle);
    for (int i = 0; i < 4; ++i) out[i] = to_c(family[i]);
    return NAQC_OK;
  });
}

naqc_status naqc_concurrence(const naqc_twoqubit* s, double* out) {
  if (!s || !out) return null_pointer("s/out");
  return guarded([&] {
    *out = naqc::concurrence(twoqubit_from(*s));
    return NAQC_OK;
  });
}

} /* extern "C" */
