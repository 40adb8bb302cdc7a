// Acceptance suite: exercises the shipped surfaces (the C API and the CLI)
// and prints one pass/fail line per criterion. Exit code is the number of
// failed criteria.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "naqc/naqc.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool condition, const std::string& message) {
    if (!condition && pass) {
      pass = false;
      detail = message;
    }
  }
};

double abs2(naqc_complex z) { return z.re * z.re + z.im * z.im; }

std::string fmt(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

int run_cli(const std::string& args) {
  const std::string command =
      std::string(NAQC_CLI_PATH) + " " + args + " >/dev/null 2>/dev/null";
  const int rc = std::system(command.c_str());
  if (rc == -1) return -1;
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  return -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// ---------------------------------------------------------------------
// criterion 1: closed-form transition population vs the Schrodinger oracle
// over the parameter grid, and under a 10 s budget

Outcome criterion_closed_form_vs_ode() {
  Outcome outcome;
  const auto start = std::chrono::steady_clock::now();
  const double omega0_grid[] = {0.5, 1.0, 2.0, 4.0, 8.0};
  const double ratio_grid[] = {0.1, 0.5, 1.0, 2.0, 5.0};
  const double theta_grid[] = {0.1, 0.6, 1.0, kPi / 2, 2.6};
  double max_diff = 0.0;
  for (const double omega0 : omega0_grid) {
    for (const double ratio : ratio_grid) {
      for (const double theta : theta_grid) {
        const naqc_params params{omega0, ratio * omega0, theta};
        double wb = 0.0;
        if (naqc_rabi_frequency(&params, &wb) != NAQC_OK || wb <= 0.0) {
          outcome.require(false, "rabi frequency failed");
          return outcome;
        }
        std::vector<double> times(50);
        for (int k = 0; k < 50; ++k) times[k] = (20.0 / wb) * k / 49.0;
        naqc_eigenpair basis0;
        naqc_eigenbasis(&params, 0.0, NAQC_BASIS_DIAGONALIZED, &basis0);
        naqc_trajectory* trajectory = nullptr;
        if (naqc_ode_trajectory(&params, &basis0.state0, times.data(), times.size(),
                                1e-9, &trajectory) != NAQC_OK) {
          outcome.require(false, std::string("ode failed: ") +
                                     naqc_last_error_message());
          return outcome;
        }
        for (std::size_t k = 0; k < times.size(); ++k) {
          naqc_qubit psi;
          naqc_trajectory_sample(trajectory, k, nullptr, &psi, nullptr);
          naqc_eigenpair basis;
          naqc_eigenbasis(&params, times[k], NAQC_BASIS_DIAGONALIZED, &basis);
          naqc_complex c0, c1;
          naqc_project(&psi, &basis, &c0, &c1);
          naqc_complex a0, a1;
          naqc_analytic_coefficients(&params, times[k], NAQC_BRANCH_UP, &a0, &a1);
          max_diff = std::max(max_diff, std::abs(abs2(c1) - abs2(a1)));
        }
        naqc_trajectory_free(trajectory);
      }
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  outcome.require(max_diff <= 1e-6,
                  "max population deviation " + fmt(max_diff) + " > 1e-6");
  outcome.require(seconds < 10.0, "grid took " + fmt(seconds) + " s (budget 10 s)");
  if (outcome.pass)
    outcome.detail = "max deviation " + fmt(max_diff) + ", " + fmt(seconds) + " s";
  return outcome;
}

// ---------------------------------------------------------------------
// criterion 2: closed-form normalization identities on 1e4 random draws

Outcome criterion_normalization_identities() {
  Outcome outcome;
  std::mt19937_64 rng(20260810);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const naqc_params params{0.25 + 7.75 * u01(rng), 8.0 * u01(rng), kPi * u01(rng)};
    const double t = 30.0 * u01(rng);
    naqc_complex a0, a1, b0, b1;
    naqc_analytic_coefficients(&params, t, NAQC_BRANCH_UP, &a0, &a1);
    naqc_analytic_coefficients(&params, t, NAQC_BRANCH_DOWN, &b0, &b1);
    worst = std::max(worst, std::abs(abs2(a0) + abs2(a1) - 1.0));
    worst = std::max(worst, std::abs(abs2(b0) + abs2(b1) - 1.0));
  }
  outcome.require(worst <= 1e-12, "worst identity violation " + fmt(worst));
  if (outcome.pass) outcome.detail = "worst violation " + fmt(worst);
  return outcome;
}

// ---------------------------------------------------------------------
// criterion 3: adiabaticity ratio consistency and adiabatic suppression

Outcome criterion_adiabaticity() {
  Outcome outcome;
  std::mt19937_64 rng(31415);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const naqc_params params{0.25 + 7.75 * u01(rng), 8.0 * u01(rng), kPi * u01(rng)};
    const double t = 25.0 * u01(rng);
    double numeric = 0.0, closed = 0.0;
    naqc_adiabaticity_ratio(&params, t, &numeric);
    naqc_adiabaticity_parameter(&params, &closed);
    worst = std::max(worst, std::abs(numeric - closed));
  }
  outcome.require(worst <= 1e-10, "ratio deviates from closed form by " + fmt(worst));

  // suppression: omega0 = 1, omega = 1e-3, theta = pi/2
  const naqc_params slow{1.0, 1e-3, kPi / 2};
  double wb = 0.0;
  naqc_rabi_frequency(&slow, &wb);
  naqc_complex a0, a1;
  naqc_analytic_coefficients(&slow, kPi / wb, NAQC_BRANCH_UP, &a0, &a1);
  const double closed_peak = abs2(a1);
  outcome.require(closed_peak <= 1.1e-6, "closed-form peak " + fmt(closed_peak));

  naqc_eigenpair basis0;
  naqc_eigenbasis(&slow, 0.0, NAQC_BASIS_DIAGONALIZED, &basis0);
  std::vector<double> times(100);
  for (int k = 0; k < 100; ++k) times[k] = (2.0 * kPi / wb) * k / 99.0;
  naqc_trajectory* trajectory = nullptr;
  naqc_ode_trajectory(&slow, &basis0.state0, times.data(), times.size(), 1e-9,
                      &trajectory);
  double ode_peak = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    naqc_qubit psi;
    naqc_trajectory_sample(trajectory, k, nullptr, &psi, nullptr);
    naqc_eigenpair basis;
    naqc_eigenbasis(&slow, times[k], NAQC_BASIS_DIAGONALIZED, &basis);
    naqc_complex c0, c1;
    naqc_project(&psi, &basis, &c0, &c1);
    ode_peak = std::max(ode_peak, abs2(c1));
  }
  naqc_trajectory_free(trajectory);
  outcome.require(ode_peak <= 1.1e-6, "ODE peak " + fmt(ode_peak));
  if (outcome.pass)
    outcome.detail = "ratio deviation " + fmt(worst) + ", peak transition " +
                   fmt(std::max(closed_peak, ode_peak));
  return outcome;
}

// ---------------------------------------------------------------------
// criterion 4: gate fixtures

Outcome criterion_gate_fixtures() {
  Outcome outcome;
  // NOT fixture: a0 = 0.8i, a1 = 0.6. The defining arc solve gives
  // tau = 2 atan2(0.8, 0.6) / sqrt(3); frozen below.
  const double tau_not_expected = 2.0 * std::atan2(0.8, 0.6) / std::sqrt(3.0);
  outcome.require(std::abs(tau_not_expected - 1.0707482874629672) <= 1e-15,
                  "frozen NOT tau drifted");
  const naqc_qubit not_input{{0.0, 0.8}, {0.6, 0.0}};
  naqc_gate_result not_result;
  const naqc_status not_status = naqc_solve_gate_time(
      NAQC_GATE_NOT, &not_input, 1.0, 2.0, NAQC_SOLVE_LITERAL, &not_result);
  outcome.require(not_status == NAQC_OK && not_result.status == NAQC_SOLVE_SOLVED,
                  "NOT fixture did not solve");
  outcome.require(std::abs(not_result.tau - tau_not_expected) <= 1e-6,
                  "NOT tau = " + fmt(not_result.tau));
  const naqc_qubit not_target{{0.6, 0.0}, {0.0, 0.8}};  // (0.6, 0.8i)
  double fidelity = 0.0;
  naqc_fidelity(&not_result.predicted_output, &not_target, &fidelity);
  outcome.require(fidelity >= 1.0 - 1e-9, "NOT output fidelity " + fmt(fidelity));

  // Hadamard fixture: a0 = (1+i)/2, a1 = (1-i)/2, tau = pi / (2 sqrt(3))
  const double tau_h_expected = kPi / (2.0 * std::sqrt(3.0));
  const naqc_qubit h_input{{0.5, 0.5}, {0.5, -0.5}};
  naqc_gate_result h_result;
  const naqc_status h_status = naqc_solve_gate_time(
      NAQC_GATE_HADAMARD, &h_input, 1.0, 2.0, NAQC_SOLVE_LITERAL, &h_result);
  outcome.require(h_status == NAQC_OK && h_result.status == NAQC_SOLVE_SOLVED,
                  "Hadamard fixture did not solve");
  outcome.require(std::abs(h_result.tau - tau_h_expected) <= 1e-6,
                  "Hadamard tau = " + fmt(h_result.tau));

  // infeasible fixture: real a0 cannot match i sin
  const naqc_qubit bad_input{{0.8, 0.0}, {0.6, 0.0}};
  naqc_gate_result bad_result;
  const naqc_status bad_status = naqc_solve_gate_time(
      NAQC_GATE_NOT, &bad_input, 1.0, 2.0, NAQC_SOLVE_LITERAL, &bad_result);
  outcome.require(bad_status == NAQC_ERROR_INFEASIBLE &&
                      bad_result.status == NAQC_SOLVE_INFEASIBLE,
                  "infeasible fixture was not rejected");
  outcome.require(bad_result.diagnosis == NAQC_DIAG_SIN_TARGET_INVALID,
                  "wrong diagnosis for the infeasible fixture");
  if (outcome.pass)
    outcome.detail = "tau_not " + fmt(not_result.tau) + ", tau_h " + fmt(h_result.tau) +
                   ", fidelity " + fmt(fidelity);
  return outcome;
}

// ---------------------------------------------------------------------
// criterion 5: multiplier scaling 2^n with unit weight sum, n = 6 under 1 s

Outcome criterion_multiplier_scaling() {
  Outcome outcome;
  const naqc_params params{1.0, 2.0, std::acos(0.5)};
  const naqc_qubit q{{0.6, 0.0}, {0.8, 0.0}};
  double n6_seconds = 0.0;
  for (const int n : {0, 1, 3, 6}) {
    const std::vector<naqc_cascade_stage> stages(static_cast<std::size_t>(n),
                                                 naqc_cascade_stage{params, 0.7});
    const auto start = std::chrono::steady_clock::now();
    naqc_cluster_list* clusters = nullptr;
    if (naqc_cascade(stages.data(), stages.size(), &q, 0.1, &clusters) != NAQC_OK) {
      outcome.require(false, "cascade failed");
      return outcome;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (n == 6) n6_seconds = seconds;
    const std::size_t expected = static_cast<std::size_t>(1) << n;
    outcome.require(naqc_cluster_list_length(clusters) == expected,
                    "wrong cluster count at n = " + std::to_string(n));
    double total = 0.0;
    for (std::size_t k = 0; k < naqc_cluster_list_length(clusters); ++k) {
      double weight = 0.0;
      naqc_cluster_list_get(clusters, k, nullptr, &weight);
      total += weight;
    }
    naqc_cluster_list_free(clusters);
    outcome.require(std::abs(total - 1.0) <= 1e-12,
                    "weight sum " + fmt(total) + " at n = " + std::to_string(n));
    if (n == 6) outcome.require(seconds < 1.0, "n = 6 took " + fmt(seconds) + " s");
  }
  if (outcome.pass) outcome.detail = "n = 6 in " + fmt(n6_seconds) + " s";
  return outcome;
}

// ---------------------------------------------------------------------
// criterion 6: converter round trip on 1000 random states

Outcome criterion_converter_round_trip() {
  Outcome outcome;
  std::mt19937_64 rng(424242);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    naqc_qubit q{{gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}};
    const double scale =
        1.0 / std::sqrt(abs2(q.a0) + abs2(q.a1));
    q.a0.re *= scale;
    q.a0.im *= scale;
    q.a1.re *= scale;
    q.a1.im *= scale;
    naqc_pathspin split;
    naqc_adiabatic_split(&q, 1.0, 1.0, 0.0, &split);
    const int keep = abs2(q.a0) >= abs2(q.a1) ? NAQC_BRANCH_UP : NAQC_BRANCH_DOWN;
    naqc_qubit kept;
    naqc_conversion_record record;
    if (naqc_converter(&split, keep, &kept, &record) != NAQC_OK) {
      outcome.require(false, "converter failed");
      return outcome;
    }
    naqc_qubit restored;
    if (naqc_reverse_converter(&record, &kept, &restored) != NAQC_OK) {
      outcome.require(false, "reverse converter failed");
      return outcome;
    }
    worst = std::max({worst, std::abs(restored.a0.re - q.a0.re),
                      std::abs(restored.a0.im - q.a0.im),
                      std::abs(restored.a1.re - q.a1.re),
                      std::abs(restored.a1.im - q.a1.im)});
  }
  outcome.require(worst <= 1e-12, "componentwise error " + fmt(worst));
  if (outcome.pass) outcome.detail = "componentwise error " + fmt(worst);
  return outcome;
}

// ---------------------------------------------------------------------
// criterion 7: swap-family concurrence

Outcome criterion_swap_family() {
  Outcome outcome;
  naqc_twoqubit plus, minus;
  naqc_swap_outputs({0.6, 0.0}, {0.8, 0.0}, &plus, &minus);
  double c_plus = 0.0, c_minus = 0.0;
  naqc_concurrence(&plus, &c_plus);
  naqc_concurrence(&minus, &c_minus);
  outcome.require(std::abs(c_plus - 0.96) <= 1e-12, "plus concurrence " + fmt(c_plus));
  outcome.require(std::abs(c_minus - 0.96) <= 1e-12,
                  "minus concurrence " + fmt(c_minus));

  double worst = 0.0;
  const double omega0_grid[] = {0.5, 1.0, 3.0};
  const double omega_grid[] = {0.3, 1.0, 2.0, 6.0};
  const double theta_grid[] = {0.0, 0.7, kPi / 2, 2.8};
  const double t_grid[] = {0.0, 0.4, 1.3, 3.7, 9.1};
  for (const double omega0 : omega0_grid)
    for (const double omega : omega_grid)
      for (const double theta : theta_grid)
        for (const double t : t_grid)
          for (const int particle : {2, 3}) {
            const naqc_params params{omega0, omega, theta};
            naqc_twoqubit family[4];
            if (naqc_swap_family(&params, t, {0.6, 0.0}, {0.8, 0.0}, particle,
                                 family) != NAQC_OK) {
              outcome.require(false, "swap family failed");
              return outcome;
            }
            for (const naqc_twoqubit& member : family) {
              double c = 0.0;
              naqc_concurrence(&member, &c);
              worst = std::max(worst, std::abs(c - 0.96));
            }
          }
  outcome.require(worst <= 1e-12, "concurrence drift " + fmt(worst));
  if (outcome.pass) outcome.detail = "max concurrence drift " + fmt(worst);
  return outcome;
}

// ---------------------------------------------------------------------
// criterion 8: CLI determinism and committed golden fixtures

Outcome criterion_cli_golden() {
  Outcome outcome;
  const fs::path workdir =
      fs::temp_directory_path() / "naqc_acceptance";
  fs::remove_all(workdir);
  fs::create_directories(workdir);
  const fs::path golden_dir = NAQC_GOLDEN_DIR;

  struct Fixture {
    std::string name;
    std::string args;
    std::string golden;  // empty: determinism check only
    int expected_exit;
  };
  const std::vector<Fixture> fixtures = {
      {"evolve_rabi.csv",
       "evolve --omega0 1 --omega 2 --theta 1.0471975512 --t-end 5 --points 501 "
       "--format csv",
       "evolve_rabi.csv", 0},
      {"synthesize_not.json",
       "synthesize --gate not --a0 0.8i --a1 0.6 --omega0 1 --omega 2",
       "synthesize_not.json", 0},
      {"synthesize_hadamard.json",
       "synthesize --gate hadamard --a0 0.5+0.5i --a1 0.5-0.5i --omega0 1 --omega 2",
       "synthesize_hadamard.json", 0},
      {"cascade.json",
       "cascade --stages 3 --omega0 1 --omega 2 --theta 1.0471975512 --t 0.9 "
       "--a0 0.6 --a1 0.8",
       "", 0},
  };

  for (const Fixture& fixture : fixtures) {
    const fs::path out1 = workdir / ("run1_" + fixture.name);
    const fs::path out2 = workdir / ("run2_" + fixture.name);
    const int rc1 = run_cli(fixture.args + " --output " + out1.string());
    const int rc2 = run_cli(fixture.args + " --output " + out2.string());
    outcome.require(rc1 == fixture.expected_exit && rc2 == fixture.expected_exit,
                    fixture.name + ": exit codes " + std::to_string(rc1) + "/" +
                        std::to_string(rc2));
    const std::string content1 = slurp(out1);
    const std::string content2 = slurp(out2);
    outcome.require(!content1.empty(), fixture.name + ": empty output");
    outcome.require(content1 == content2,
                    fixture.name + ": two runs are not byte-identical");
    if (!fixture.golden.empty()) {
      const std::string golden = slurp(golden_dir / fixture.golden);
      outcome.require(!golden.empty(),
                      fixture.name + ": missing committed golden file");
      outcome.require(content1 == golden,
                      fixture.name + ": output differs from the committed golden");
    }
  }

  // CSV sanity on the evolve fixture: normalization per row
  {
    std::ifstream in(workdir / "run1_evolve_rabi.csv");
    std::string line;
    std::getline(in, line);
    outcome.require(line == "t,re_c0,im_c0,re_c1,im_c1,p0,p1",
                    "unexpected CSV header: " + line);
    int rows = 0;
    double worst = 0.0;
    while (std::getline(in, line)) {
      ++rows;
      double t, re0, im0, re1, im1, p0, p1;
      if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf", &t, &re0, &im0,
                      &re1, &im1, &p0, &p1) == 7)
        worst = std::max(worst, std::abs(p0 + p1 - 1.0));
    }
    outcome.require(rows == 501, "expected 501 rows, got " + std::to_string(rows));
    outcome.require(worst <= 1e-9, "per-row normalization drift " + fmt(worst));
  }
  fs::remove_all(workdir);
  if (outcome.pass) outcome.detail = "4 fixtures byte-stable, goldens matched";
  return outcome;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"closed form vs ODE oracle (5x5x5 grid, 50 samples, < 10 s)",
       criterion_closed_form_vs_ode},
      {"normalization identities on 1e4 random draws", criterion_normalization_identities},
      {"adiabaticity consistency and suppression", criterion_adiabaticity},
      {"gate timing fixtures (NOT, Hadamard, infeasible)", criterion_gate_fixtures},
      {"multiplier scaling 2^n, n = 6 under 1 s", criterion_multiplier_scaling},
      {"converter round trip on 1000 random states", criterion_converter_round_trip},
      {"swap family concurrence invariance", criterion_swap_family},
      {"CLI determinism and golden fixtures", criterion_cli_golden},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome outcome;
    try {
      outcome = criteria[k].run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] criterion %zu: %s%s%s\n", outcome.pass ? "PASS" : "FAIL", k + 1,
                criteria[k].name, outcome.detail.empty() ? "" : " -- ",
                outcome.detail.c_str());
  }
  if (failures) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures;
}
