/*
 * naqc -- non-adiabatic qubit control in a rotating magnetic field.
 *
 * C interface to the simulation core. All functions return a naqc_status;
 * results are written through out-parameters. Variable-size results
 * (sampled trajectories, multiplier cascades) are returned as opaque
 * handles with accessor/release functions. The library keeps no global
 * state; a thread-local message describing the most recent failure is
 * available from naqc_last_error_message().
 *
 * Conventions: frequencies in rad per unit time, angles in radians, time
 * unit-agnostic. Spin states are amplitude pairs over the z basis
 * {|0>, |1>}; two-particle states are amplitude quadruples over
 * {|00>, |01>, |10>, |11>}.
 */

#ifndef NAQC_H
#define NAQC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NAQC_API __declspec(dllexport)
#else
#define NAQC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* ------------------------------------------------------------------ */
/* status codes                                                        */

typedef enum naqc_status {
  NAQC_OK = 0,
  NAQC_ERROR_INVALID_ARGUMENT = 1,
  NAQC_ERROR_NOT_NORMALIZED = 2,
  NAQC_ERROR_NON_ORTHOGONAL_BASIS = 3,
  NAQC_ERROR_EMPTY_BRANCH = 4,
  NAQC_ERROR_INCONSISTENT_RECORD = 5,
  NAQC_ERROR_INVALID_MANIFOLD = 6,
  NAQC_ERROR_DEGENERATE_DRIVE = 7,
  NAQC_ERROR_STEP_UNDERFLOW = 8,
  NAQC_ERROR_INFEASIBLE = 9,
  NAQC_ERROR_NOT_FOUND = 10,
  NAQC_ERROR_NULL_POINTER = 11,
  NAQC_ERROR_OUT_OF_RANGE = 12,
  NAQC_ERROR_INTERNAL = 13
} naqc_status;

NAQC_API const char* naqc_status_name(naqc_status status);

/* Thread-local description of the most recent failing call. */
NAQC_API const char* naqc_last_error_message(void);

NAQC_API const char* naqc_version(void);

/* ------------------------------------------------------------------ */
/* plain data types                                                    */

typedef struct naqc_complex {
  double re;
  double im;
} naqc_complex;

/* Drive configuration: omega0 > 0, omega >= 0, theta in [0, pi]. */
typedef struct naqc_params {
  double omega0; /* Larmor frequency gamma*B */
  double omega;  /* field rotation rate */
  double theta;  /* polar angle of the field axis */
} naqc_params;

typedef struct naqc_qubit {
  naqc_complex a0;
  naqc_complex a1;
} naqc_qubit;

typedef enum naqc_branch { NAQC_BRANCH_UP = 0, NAQC_BRANCH_DOWN = 1 } naqc_branch;

/*
 * NAQC_BASIS_ANSATZ reproduces the symmetric half-angle/half-phase closed
 * form verbatim (not an exact eigenpair for general theta, and generally
 * not orthogonal); NAQC_BASIS_DIAGONALIZED is the exact instantaneous
 * eigenbasis, E0 = +omega0/2 first, larger-magnitude component made real
 * positive.
 */
typedef enum naqc_basis_mode {
  NAQC_BASIS_ANSATZ = 0,
  NAQC_BASIS_DIAGONALIZED = 1
} naqc_basis_mode;

typedef struct naqc_eigenpair {
  naqc_qubit state0;
  naqc_qubit state1;
  double e0;
  double e1;
  int mode; /* naqc_basis_mode */
} naqc_eigenpair;

typedef struct naqc_adiabaticity_report {
  double closed_form;
  double numeric_max;
  int is_adiabatic;
  double threshold;
} naqc_adiabaticity_report;

/* Spin state correlated with the spatial branch; weights w = int(phi^2 dX). */
typedef struct naqc_pathspin {
  naqc_qubit up_spin;
  naqc_qubit down_spin;
  naqc_complex up_amp;
  naqc_complex down_amp;
  double w_up;
  double w_down;
} naqc_pathspin;

typedef struct naqc_cluster_report {
  uint64_t n_up;
  uint64_t n_down;
  naqc_qubit logical_up;
  naqc_qubit logical_down;
} naqc_cluster_report;

typedef struct naqc_conversion_record {
  naqc_qubit input;
  int selected_branch; /* naqc_branch */
  naqc_complex kept_amp;
  naqc_complex discarded_amp;
  naqc_qubit discarded_state;
} naqc_conversion_record;

typedef enum naqc_gate { NAQC_GATE_NOT = 0, NAQC_GATE_Z = 1, NAQC_GATE_HADAMARD = 2 } naqc_gate;

typedef enum naqc_solve_mode {
  NAQC_SOLVE_LITERAL = 0,
  NAQC_SOLVE_UP_TO_PHASE = 1
} naqc_solve_mode;

typedef enum naqc_solve_status {
  NAQC_SOLVE_SOLVED = 0,
  NAQC_SOLVE_INFEASIBLE = 1,
  NAQC_SOLVE_NOT_FOUND = 2
} naqc_solve_status;

typedef enum naqc_diagnosis {
  NAQC_DIAG_NONE = 0,
  NAQC_DIAG_COS_TARGET_INVALID = 1,
  NAQC_DIAG_SIN_TARGET_INVALID = 2,
  NAQC_DIAG_PAIR_INCONSISTENT = 3
} naqc_diagnosis;

typedef struct naqc_gate_result {
  int status;    /* naqc_solve_status */
  int diagnosis; /* naqc_diagnosis */
  naqc_params params;
  double tau;
  naqc_qubit predicted_output;
  double residual;
  naqc_complex hold_hamiltonian[4]; /* H(tau), row major */
} naqc_gate_result;

typedef struct naqc_synth_bounds {
  double omega0_min, omega0_max;
  double omega_min, omega_max;
  double theta_min, theta_max;
  double t_min, t_max;
} naqc_synth_bounds;

typedef struct naqc_synth_grid {
  int n_omega0;
  int n_omega;
  int n_theta;
  int n_t;
  int refine_iters;
} naqc_synth_grid;

typedef struct naqc_gate_verification {
  double analytic_fidelity;
  double ode_fidelity;
  double phase_offset_c0;
  double phase_offset_c1;
} naqc_gate_verification;

typedef struct naqc_twoqubit {
  naqc_complex amps[4]; /* |00>, |01>, |10>, |11> */
} naqc_twoqubit;

typedef struct naqc_cascade_stage {
  naqc_params params;
  double t;
} naqc_cascade_stage;

/* ------------------------------------------------------------------ */
/* core dynamics                                                       */

/* H(t) = (omega0/2) [[cos th, e^{-i w t} sin th], [e^{i w t} sin th, -cos th]],
 * written row major into out[4]. */
NAQC_API naqc_status naqc_hamiltonian(const naqc_params* params, double t,
                                      naqc_complex out[4]);

NAQC_API naqc_status naqc_hamiltonian_dot(const naqc_params* params, double t,
                                          naqc_complex out[4]);

NAQC_API naqc_status naqc_eigenbasis(const naqc_params* params, double t, int mode,
                                     naqc_eigenpair* out);

/* sqrt(omega0^2 + omega^2 - 2 omega0 omega cos theta) */
NAQC_API naqc_status naqc_rabi_frequency(const naqc_params* params, double* out);

/* (omega / 2 omega0) sin theta */
NAQC_API naqc_status naqc_adiabaticity_parameter(const naqc_params* params, double* out);

/* |<0(t)|dH/dt|1(t)>| / (E0-E1)^2, evaluated with the exact basis. */
NAQC_API naqc_status naqc_adiabaticity_ratio(const naqc_params* params, double t,
                                             double* out);

NAQC_API naqc_status naqc_assess_adiabaticity(const naqc_params* params,
                                              const double* times, size_t n_times,
                                              double threshold,
                                              naqc_adiabaticity_report* out);

/* Closed-form branch coefficients at time t >= 0. */
NAQC_API naqc_status naqc_analytic_coefficients(const naqc_params* params, double t,
                                                int branch, naqc_complex* c0,
                                                naqc_complex* c1);

/* Expansion coefficients of psi in the given basis; fails with
 * NAQC_ERROR_NON_ORTHOGONAL_BASIS when |<state0|state1>| > 1e-10. */
NAQC_API naqc_status naqc_project(const naqc_qubit* psi, const naqc_eigenpair* basis,
                                  naqc_complex* c0, naqc_complex* c1);

/* |<psi|phi>|, global-phase insensitive. */
NAQC_API naqc_status naqc_fidelity(const naqc_qubit* psi, const naqc_qubit* phi,
                                   double* out);

/* ------------------------------------------------------------------ */
/* Schrodinger oracle                                                  */

/* Integrates i dpsi/dt = H(t) psi from t = 0 to t_end with an adaptive
 * embedded RK 5(4) pair; tol in (0, 1e-4] controls the local error. The
 * final norm is reported, never silently corrected. */
NAQC_API naqc_status naqc_ode_propagate(const naqc_params* params,
                                        const naqc_qubit* psi0, double t_end,
                                        double tol, naqc_qubit* psi_out,
                                        double* final_norm);

typedef struct naqc_trajectory naqc_trajectory; /* opaque */

/* Sampled integration at the given non-decreasing times >= 0. The returned
 * handle must be released with naqc_trajectory_free. */
NAQC_API naqc_status naqc_ode_trajectory(const naqc_params* params,
                                         const naqc_qubit* psi0, const double* times,
                                         size_t n_times, double tol,
                                         naqc_trajectory** out);

NAQC_API size_t naqc_trajectory_length(const naqc_trajectory* trajectory);
NAQC_API naqc_status naqc_trajectory_sample(const naqc_trajectory* trajectory,
                                            size_t index, double* t, naqc_qubit* psi,
                                            double* norm);
NAQC_API void naqc_trajectory_free(naqc_trajectory* trajectory);

/* ------------------------------------------------------------------ */
/* path-spin ensemble                                                  */

/* Adiabatic passage: |0> rides the up branch, |1> the down branch, with the
 * precession phases e^{-+ i omega0_t} carried on the branch amplitudes. */
NAQC_API naqc_status naqc_adiabatic_split(const naqc_qubit* q, double w_up,
                                          double w_down, double omega0_t,
                                          naqc_pathspin* out);

NAQC_API naqc_status naqc_branch_probability(const naqc_pathspin* s, int branch,
                                             double* out);

/* Deterministic expected counts, round-half-to-even. */
NAQC_API naqc_status naqc_cluster_counts(const naqc_pathspin* s, uint64_t n_particles,
                                         naqc_cluster_report* out);

/* Binomial draws from a generator seeded with `seed`. */
NAQC_API naqc_status naqc_cluster_counts_sampled(const naqc_pathspin* s,
                                                 uint64_t n_particles, uint64_t seed,
                                                 naqc_cluster_report* out);

/* Post-selects one branch, renormalized, plus the record inverting the step.
 * NAQC_ERROR_EMPTY_BRANCH when the kept branch probability is < 1e-15. */
NAQC_API naqc_status naqc_converter(const naqc_pathspin* s, int keep, naqc_qubit* out,
                                    naqc_conversion_record* record);

/* Exact inverse of the converter by amplitude bookkeeping. */
NAQC_API naqc_status naqc_reverse_converter(const naqc_conversion_record* record,
                                            const naqc_qubit* kept_output,
                                            naqc_qubit* out);

/* One non-adiabatic boost: two weighted logical qubits out of one. The
 * warning flag is set when adiabaticity_parameter < warn_threshold (the
 * operation still runs). */
NAQC_API naqc_status naqc_multiply(const naqc_params* params, const naqc_qubit* q,
                                   double t, double warn_threshold, naqc_qubit* up,
                                   naqc_qubit* down, double* p_up, double* p_down,
                                   int* adiabatic_warning);

typedef struct naqc_cluster_list naqc_cluster_list; /* opaque */

/* n_stages chained boosts: 2^n_stages clusters with weights summing to 1.
 * The returned handle must be released with naqc_cluster_list_free. */
NAQC_API naqc_status naqc_cascade(const naqc_cascade_stage* stages, size_t n_stages,
                                  const naqc_qubit* q, double warn_threshold,
                                  naqc_cluster_list** out);

NAQC_API size_t naqc_cluster_list_length(const naqc_cluster_list* clusters);
NAQC_API naqc_status naqc_cluster_list_get(const naqc_cluster_list* clusters,
                                           size_t index, naqc_qubit* state,
                                           double* weight);
NAQC_API void naqc_cluster_list_free(naqc_cluster_list* clusters);

/* ------------------------------------------------------------------ */
/* gate synthesis                                                      */

/* theta = arccos(omega0/omega); NAQC_ERROR_INVALID_MANIFOLD when
 * omega0 > omega. */
NAQC_API naqc_status naqc_manifold_theta(double omega0, double omega, double* out);

/* Nominal output amplitudes of the gate applied to the input pair. */
NAQC_API naqc_status naqc_gate_target(int gate, const naqc_qubit* input,
                                      naqc_qubit* out);

/* Solves the gate timing conditions on the manifold. Returns NAQC_OK with
 * status NAQC_SOLVE_SOLVED, or NAQC_ERROR_INFEASIBLE / NAQC_ERROR_NOT_FOUND
 * with the result (including the diagnosis) still filled in. */
NAQC_API naqc_status naqc_solve_gate_time(int gate, const naqc_qubit* input,
                                          double omega0, double omega, int mode,
                                          naqc_gate_result* out);

/* Deterministic box search for a drive mapping input to target; pass NULL
 * grid for the defaults. NAQC_ERROR_NOT_FOUND reports the best point. */
NAQC_API naqc_status naqc_synthesize(const naqc_qubit* input, const naqc_qubit* target,
                                     const naqc_synth_bounds* bounds,
                                     const naqc_synth_grid* grid,
                                     naqc_gate_result* out);

/* Confronts a solved result with the Schrodinger oracle. initial_logical is
 * the starting coefficient pair ((1,0) for the named gates; the searched
 * input for synthesized results). */
NAQC_API naqc_status naqc_verify_gate(const naqc_gate_result* result,
                                      const naqc_qubit* initial_logical,
                                      const naqc_qubit* target,
                                      naqc_gate_verification* out);

/* ------------------------------------------------------------------ */
/* two-qubit swap family                                               */

/* The two swap outputs a|00> +- b|11>; requires |a|^2 + |b|^2 = 1. */
NAQC_API naqc_status naqc_swap_outputs(naqc_complex a, naqc_complex b,
                                       naqc_twoqubit* plus, naqc_twoqubit* minus);

/* Four-state family from local non-adiabatic control of one particle
 * (particle = 2 or 3) of each swap output. */
NAQC_API naqc_status naqc_swap_family(const naqc_params* params, double t,
                                      naqc_complex a, naqc_complex b, int particle,
                                      naqc_twoqubit out[4]);

/* Pure-state concurrence 2|a00 a11 - a01 a10|. */
NAQC_API naqc_status naqc_concurrence(const naqc_twoqubit* s, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NAQC_H */
