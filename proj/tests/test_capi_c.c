/* Compile-and-link check that the public header is consumable from plain C,
 * plus a few smoke calls across the surface. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>

#include "naqc/naqc.h"

static int failures = 0;

static void check(int condition, const char* what) {
  if (!condition) {
    fprintf(stderr, "FAIL: %s\n", what);
    ++failures;
  }
}

int main(void) {
  const naqc_params params = {1.0, 2.0, 1.0471975511965976};
  naqc_complex h[4];
  check(naqc_hamiltonian(&params, 0.0, h) == NAQC_OK, "hamiltonian");
  check(fabs(h[0].re - 0.25) < 1e-12, "hamiltonian diagonal");

  double wb = 0.0;
  check(naqc_rabi_frequency(&params, &wb) == NAQC_OK, "rabi");
  check(fabs(wb - sqrt(3.0)) < 1e-12, "rabi value");

  const naqc_qubit psi0 = {{1.0, 0.0}, {0.0, 0.0}};
  naqc_qubit psi;
  double norm = 0.0;
  check(naqc_ode_propagate(&params, &psi0, 1.0, 1e-9, &psi, &norm) == NAQC_OK, "ode");
  check(fabs(norm - 1.0) < 1e-7, "ode norm");

  naqc_cascade_stage stages[2] = {{{1.0, 2.0, 1.0471975511965976}, 0.5},
                                  {{1.0, 2.0, 1.0471975511965976}, 0.5}};
  naqc_cluster_list* clusters = NULL;
  check(naqc_cascade(stages, 2, &psi0, 0.1, &clusters) == NAQC_OK, "cascade");
  check(naqc_cluster_list_length(clusters) == 4, "cascade size");
  double total = 0.0;
  for (size_t i = 0; i < naqc_cluster_list_length(clusters); ++i) {
    naqc_qubit state;
    double weight = 0.0;
    check(naqc_cluster_list_get(clusters, i, &state, &weight) == NAQC_OK, "cluster get");
    total += weight;
  }
  check(fabs(total - 1.0) < 1e-12, "cascade weights");
  naqc_cluster_list_free(clusters);

  const naqc_qubit input = {{0.0, 0.8}, {0.6, 0.0}};
  naqc_gate_result gate;
  check(naqc_solve_gate_time(NAQC_GATE_NOT, &input, 1.0, 2.0, NAQC_SOLVE_LITERAL,
                             &gate) == NAQC_OK,
        "gate solve");
  check(fabs(gate.tau - 1.0707482874629672) < 1e-12, "gate tau");

  check(naqc_rabi_frequency(NULL, &wb) == NAQC_ERROR_NULL_POINTER, "null check");
  check(naqc_status_name(NAQC_OK) != NULL, "status name");

  if (failures) {
    fprintf(stderr, "%d C API smoke checks failed\n", failures);
    return EXIT_FAILURE;
  }
  printf("C API smoke checks passed\n");
  return EXIT_SUCCESS;
}
