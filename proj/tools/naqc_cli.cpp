// naqc command-line front end: evolutions, sweeps, multiplier cascades, gate
// synthesis and swap-family construction on top of the C API. Emits
// machine-readable CSV/JSON written atomically (temp file + rename).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "naqc/naqc.h"

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double kPi = 3.14159265358979323846;

// exit 2: configuration/validation problems; exit 3: numerical failures
// (step underflow, infeasible/not-found synthesis) with the report written.
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

void require_ok(naqc_status status, const std::string& where) {
  if (status == NAQC_OK) return;
  const std::string message = where + ": " + naqc_status_name(status) + " (" +
                              naqc_last_error_message() + ")";
  if (status == NAQC_ERROR_STEP_UNDERFLOW) throw NumericalFailure(message);
  throw ValidationFailure(message);
}

// complex literals: "0.6", "0.8i", "1+2i", "-0.5-0.25i", "i", "-i" ('j' works too)
naqc_complex parse_complex(std::string text) {
  std::erase_if(text, [](unsigned char c) { return std::isspace(c); });
  if (text.empty()) throw ValidationFailure("empty complex literal");
  auto to_double = [](const std::string& s) -> double {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ValidationFailure("bad numeric literal '" + s + "'");
    }
    if (used != s.size()) throw ValidationFailure("bad numeric literal '" + s + "'");
    return value;
  };
  const char tail = text.back();
  if (tail != 'i' && tail != 'j') return {to_double(text), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  // split at the last sign that starts the imaginary term (not a leading
  // sign, not an exponent sign)
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, to_double(body)};
  return {to_double(body.substr(0, split)), to_double(body.substr(split))};
}

double abs2(naqc_complex z) { return z.re * z.re + z.im * z.im; }

ordered_json to_json(naqc_complex z) { return ordered_json{{"re", z.re}, {"im", z.im}}; }

ordered_json to_json(const naqc_qubit& q) {
  return ordered_json{{"a0", to_json(q.a0)}, {"a1", to_json(q.a1)}};
}

ordered_json to_json(const naqc_params& p) {
  return ordered_json{{"omega0", p.omega0}, {"omega", p.omega}, {"theta", p.theta}};
}

ordered_json to_json(const naqc_twoqubit& s) {
  ordered_json amps = ordered_json::array();
  for (const naqc_complex& a : s.amps) amps.push_back(to_json(a));
  return amps;
}

ordered_json matrix_json(const naqc_complex m[4]) {
  ordered_json out = ordered_json::array();
  for (int k = 0; k < 4; ++k) out.push_back(to_json(m[k]));
  return out;
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(target.parent_path(), ec);
  }
  const std::filesystem::path temp = target.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationFailure("cannot open output file " + temp.string());
    out << content;
    if (!out.flush()) throw ValidationFailure("write failed for " + temp.string());
  }
  std::filesystem::rename(temp, target);
}

std::string resolve_output(const std::string& requested, const std::string& fallback) {
  std::filesystem::path path = requested.empty() ? fallback : requested;
  if (path.is_relative()) {
    if (const char* dir = std::getenv("NAQC_OUTPUT_DIR"); dir && *dir)
      path = std::filesystem::path(dir) / path;
  }
  return path.string();
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    out.push_back(k == n - 1 ? hi : lo + (hi - lo) * (static_cast<double>(k) / (n - 1)));
  return out;
}

std::string trim(std::string s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.erase(s.begin());
  while (!s.empty() && is_space(s.back())) s.pop_back();
  return s;
}

// Flat key = value config mirroring the long flag names ('#' comments, bare
// keys for boolean flags). Returned as --key=value tokens injected before
// the explicit flags, which therefore win.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationFailure("cannot read config file " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::string key = line, value;
    if (const auto eq = line.find('='); eq != std::string::npos) {
      key = trim(line.substr(0, eq));
      value = trim(line.substr(eq + 1));
    } else if (const auto space = line.find_first_of(" \t");
               space != std::string::npos) {
      key = trim(line.substr(0, space));
      value = trim(line.substr(space + 1));
    }
    if (key.empty()) throw ValidationFailure("malformed config line: " + line);
    tokens.push_back(value.empty() ? "--" + key : "--" + key + "=" + value);
  }
  return tokens;
}

// Extracts --config <file> / --config=<file> and splices the file-derived
// tokens right after the subcommand name.
std::vector<std::string> assemble_args(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string config_path;
  for (std::size_t k = 1; k < args.size();) {
    if (args[k] == "--config") {
      if (k + 1 >= args.size())
        throw ValidationFailure("--config expects a file path");
      config_path = args[k + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(k),
                 args.begin() + static_cast<std::ptrdiff_t>(k) + 2);
    } else if (args[k].rfind("--config=", 0) == 0) {
      config_path = args[k].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
      ++k;
    }
  }
  if (!config_path.empty()) {
    if (args.size() < 2 || args[1].empty() || args[1][0] == '-')
      throw ValidationFailure("--config requires a subcommand");
    const std::vector<std::string> extra = config_tokens(config_path);
    args.insert(args.begin() + 2, extra.begin(), extra.end());
  }
  return args;
}

// shared flag groups -------------------------------------------------------

struct ParamsFlags {
  double omega0 = 0.0;
  double omega = 0.0;
  double theta = 0.0;
  double theta_deg = 0.0;
  bool larmor_units = false;
  CLI::Option* theta_opt = nullptr;
  CLI::Option* theta_deg_opt = nullptr;

  void attach(CLI::App* cmd, bool required = true) {
    auto* o0 = cmd->add_option("--omega0", omega0, "Larmor frequency (rad/time)");
    auto* ow = cmd->add_option("--omega", omega, "field rotation rate (rad/time)");
    theta_opt = cmd->add_option("--theta", theta, "polar angle (rad)");
    theta_deg_opt =
        cmd->add_option("--theta-deg", theta_deg, "polar angle in degrees");
    theta_opt->excludes(theta_deg_opt);
    cmd->add_flag("--larmor-units", larmor_units,
                  "interpret time flags in units of 1/omega0 (outputs stay in "
                  "absolute time)");
    if (required) {
      o0->required();
      ow->required();
    }
  }

  naqc_params resolve() const {
    naqc_params p{omega0, omega, theta};
    if (theta_deg_opt && theta_deg_opt->count() > 0) p.theta = theta_deg * kPi / 180.0;
    return p;
  }

  // converts a time flag value to absolute units at parse time
  double time_in(double t) const { return larmor_units ? t / omega0 : t; }
};

struct StateFlags {
  std::string a0_text;
  std::string a1_text;
  bool normalize = false;

  void attach(CLI::App* cmd, bool required) {
    auto* o0 = cmd->add_option("--a0", a0_text, "amplitude of |0> (complex literal)");
    auto* o1 = cmd->add_option("--a1", a1_text, "amplitude of |1> (complex literal)");
    cmd->add_flag("--normalize", normalize, "renormalize the input amplitudes");
    if (required) {
      o0->required();
      o1->required();
    }
  }

  bool provided() const { return !a0_text.empty() || !a1_text.empty(); }

  naqc_qubit resolve() const {
    if (a0_text.empty() || a1_text.empty())
      throw ValidationFailure("both --a0 and --a1 must be given");
    naqc_qubit q{parse_complex(a0_text), parse_complex(a1_text)};
    const double total = abs2(q.a0) + abs2(q.a1);
    if (normalize) {
      if (total == 0.0) throw ValidationFailure("cannot normalize a zero state");
      const double scale = 1.0 / std::sqrt(total);
      q.a0.re *= scale;
      q.a0.im *= scale;
      q.a1.re *= scale;
      q.a1.im *= scale;
    } else if (std::abs(total - 1.0) > 1e-9) {
      throw ValidationFailure(
          "input state is not normalized (|a0|^2 + |a1|^2 = " + fmt(total) +
          "); pass --normalize to rescale");
    }
    return q;
  }
};

struct OutputFlags {
  std::string path;
  std::string format = "json";

  void attach(CLI::App* cmd, const std::string& default_format = "json") {
    format = default_format;
    cmd->add_option("--output,-o", path,
                    "output file (relative paths honour NAQC_OUTPUT_DIR)");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
  }
};

void emit(const OutputFlags& out, const std::string& command,
          const std::string& content) {
  const std::string ext = out.format == "csv" ? ".csv" : ".json";
  atomic_write(resolve_output(out.path, command + ext), content);
}

// row shared by evolve (both methods) --------------------------------------

struct Row {
  double t;
  naqc_complex c0, c1;
};

std::string rows_to_csv(const std::vector<Row>& rows) {
  std::string csv = "t,re_c0,im_c0,re_c1,im_c1,p0,p1\n";
  for (const Row& r : rows) {
    csv += fmt(r.t) + ',' + fmt(r.c0.re) + ',' + fmt(r.c0.im) + ',' + fmt(r.c1.re) +
           ',' + fmt(r.c1.im) + ',' + fmt(abs2(r.c0)) + ',' + fmt(abs2(r.c1)) + '\n';
  }
  return csv;
}

ordered_json rows_to_json(const std::vector<Row>& rows) {
  ordered_json out = ordered_json::array();
  for (const Row& r : rows) {
    out.push_back(ordered_json{{"t", r.t},
                               {"c0", to_json(r.c0)},
                               {"c1", to_json(r.c1)},
                               {"p0", abs2(r.c0)},
                               {"p1", abs2(r.c1)}});
  }
  return out;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

const char* status_text(int solve_status) {
  switch (solve_status) {
    case NAQC_SOLVE_SOLVED:
      return "solved";
    case NAQC_SOLVE_INFEASIBLE:
      return "infeasible";
    default:
      return "not_found";
  }
}

const char* diagnosis_text(int diagnosis) {
  switch (diagnosis) {
    case NAQC_DIAG_COS_TARGET_INVALID:
      return "cosine target not real in [-1, 1]";
    case NAQC_DIAG_SIN_TARGET_INVALID:
      return "sine target not of the form i*s with s real in [-1, 1]";
    case NAQC_DIAG_PAIR_INCONSISTENT:
      return "cosine/sine targets are mutually inconsistent";
    default:
      return "none";
  }
}

// subcommands ---------------------------------------------------------------

void run_evolve(const ParamsFlags& pf, const StateFlags& sf, const OutputFlags& of,
                double t_start, double t_end, int points, double tolerance,
                const std::string& method, const std::string& branch) {
  if (points < 2) throw ValidationFailure("--points must be >= 2");
  if (!(t_end > t_start) || !(t_start >= 0.0))
    throw ValidationFailure("need t_end > t_start >= 0");
  const naqc_params params = pf.resolve();
  const std::vector<double> times = linspace(t_start, t_end, points);

  std::vector<Row> rows;
  rows.reserve(times.size());
  bool underflow = false;
  std::string failure;

  if (method == "analytic") {
    if (sf.provided())
      std::cerr << "note: --a0/--a1 are ignored for --method analytic (the "
                   "series starts in the branch eigenstate)\n";
    const int branch_id = branch == "down" ? NAQC_BRANCH_DOWN : NAQC_BRANCH_UP;
    for (const double t : times) {
      naqc_complex c0, c1;
      require_ok(naqc_analytic_coefficients(&params, t, branch_id, &c0, &c1),
                 "analytic_coefficients");
      rows.push_back({t, c0, c1});
    }
  } else {
    naqc_qubit psi0;
    if (sf.provided()) {
      psi0 = sf.resolve();
    } else {
      naqc_eigenpair basis;
      require_ok(naqc_eigenbasis(&params, 0.0, NAQC_BASIS_DIAGONALIZED, &basis),
                 "eigenbasis");
      psi0 = basis.state0;
    }
    naqc_trajectory* trajectory = nullptr;
    const naqc_status status = naqc_ode_trajectory(
        &params, &psi0, times.data(), times.size(), tolerance, &trajectory);
    if (status == NAQC_OK) {
      for (std::size_t k = 0; k < times.size(); ++k) {
        double t = 0.0, norm = 0.0;
        naqc_qubit psi;
        require_ok(naqc_trajectory_sample(trajectory, k, &t, &psi, &norm),
                   "trajectory_sample");
        rows.push_back({t, psi.a0, psi.a1});
      }
      naqc_trajectory_free(trajectory);
    } else if (status == NAQC_ERROR_STEP_UNDERFLOW) {
      // salvage the reachable prefix so the partial report is still useful
      underflow = true;
      failure = naqc_last_error_message();
      for (const double t : times) {
        naqc_qubit psi;
        double norm = 0.0;
        if (naqc_ode_propagate(&params, &psi0, t, tolerance, &psi, &norm) != NAQC_OK)
          break;
        rows.push_back({t, psi.a0, psi.a1});
      }
    } else {
      require_ok(status, "ode_trajectory");
    }
  }

  if (of.format == "csv") {
    emit(of, "evolve", rows_to_csv(rows));
  } else {
    ordered_json report{{"command", "evolve"},
                        {"params", to_json(params)},
                        {"method", method},
                        {"tolerance", tolerance},
                        {"status", underflow ? "step_underflow" : "ok"},
                        {"rows", rows_to_json(rows)}};
    if (method == "analytic") report["branch"] = branch;
    emit(of, "evolve", dump(report));
  }
  if (underflow)
    throw NumericalFailure("integration step underflow (" + failure +
                           "); partial report written");
}

void run_adiabaticity(const ParamsFlags& pf, const OutputFlags& of, double t_start,
                      double t_end, int points, double threshold) {
  if (points < 2) throw ValidationFailure("--points must be >= 2");
  if (!(t_end > t_start) || !(t_start >= 0.0))
    throw ValidationFailure("need t_end > t_start >= 0");
  const naqc_params params = pf.resolve();
  const std::vector<double> times = linspace(t_start, t_end, points);
  naqc_adiabaticity_report report;
  require_ok(
      naqc_assess_adiabaticity(&params, times.data(), times.size(), threshold, &report),
      "assess_adiabaticity");
  double rabi = 0.0;
  require_ok(naqc_rabi_frequency(&params, &rabi), "rabi_frequency");
  emit(of, "adiabaticity",
       dump(ordered_json{{"command", "adiabaticity"},
                         {"params", to_json(params)},
                         {"rabi_frequency", rabi},
                         {"closed_form", report.closed_form},
                         {"numeric_max", report.numeric_max},
                         {"is_adiabatic", report.is_adiabatic != 0},
                         {"threshold", report.threshold},
                         {"grid", ordered_json{{"t_start", t_start},
                                               {"t_end", t_end},
                                               {"points", points}}}}));
}

void run_multiply(const ParamsFlags& pf, const StateFlags& sf, const OutputFlags& of,
                  double t, double threshold, std::uint64_t ensemble,
                  std::optional<std::uint64_t> seed) {
  const naqc_params params = pf.resolve();
  const naqc_qubit q = sf.resolve();
  naqc_qubit up, down;
  double p_up = 0.0, p_down = 0.0;
  int warning = 0;
  require_ok(
      naqc_multiply(&params, &q, t, threshold, &up, &down, &p_up, &p_down, &warning),
      "multiply");
  if (warning)
    std::cerr << "warning: drive is adiabatic (parameter < " << threshold
              << "); transition transfer is suppressed\n";
  ordered_json report{{"command", "multiply"},
                      {"params", to_json(params)},
                      {"t", t},
                      {"input", to_json(q)},
                      {"probabilities", ordered_json{{"up", p_up}, {"down", p_down}}},
                      {"up_state", to_json(up)},
                      {"down_state", to_json(down)},
                      {"adiabatic_warning", warning != 0}};
  if (ensemble > 0) {
    naqc_pathspin split;
    require_ok(naqc_adiabatic_split(&q, 1.0, 1.0, 0.0, &split), "adiabatic_split");
    naqc_cluster_report counts;
    require_ok(naqc_cluster_counts(&split, ensemble, &counts), "cluster_counts");
    ordered_json counts_json{{"ensemble", ensemble},
                             {"n_up", counts.n_up},
                             {"n_down", counts.n_down}};
    if (seed) {
      naqc_cluster_report drawn;
      require_ok(naqc_cluster_counts_sampled(&split, ensemble, *seed, &drawn),
                 "cluster_counts_sampled");
      counts_json["sampled"] = ordered_json{
          {"seed", *seed}, {"n_up", drawn.n_up}, {"n_down", drawn.n_down}};
    }
    report["counts"] = counts_json;
  }
  emit(of, "multiply", dump(report));
}

void run_cascade(const ParamsFlags& pf, const StateFlags& sf, const OutputFlags& of,
                 double t, int stages, double threshold) {
  if (stages < 0) throw ValidationFailure("--stages must be >= 0");
  const naqc_params params = pf.resolve();
  const naqc_qubit q = sf.resolve();
  const std::vector<naqc_cascade_stage> stage_list(
      static_cast<std::size_t>(stages), naqc_cascade_stage{params, t});
  naqc_cluster_list* clusters = nullptr;
  require_ok(naqc_cascade(stage_list.data(), stage_list.size(), &q, threshold, &clusters),
             "cascade");
  ordered_json cluster_json = ordered_json::array();
  double weight_sum = 0.0;
  for (std::size_t k = 0; k < naqc_cluster_list_length(clusters); ++k) {
    naqc_qubit state;
    double weight = 0.0;
    require_ok(naqc_cluster_list_get(clusters, k, &state, &weight), "cluster_list_get");
    weight_sum += weight;
    cluster_json.push_back(ordered_json{{"state", to_json(state)}, {"weight", weight}});
  }
  naqc_cluster_list_free(clusters);
  emit(of, "cascade",
       dump(ordered_json{{"command", "cascade"},
                         {"stages", stages},
                         {"params", to_json(params)},
                         {"t", t},
                         {"input", to_json(q)},
                         {"clusters", cluster_json},
                         {"weight_sum", weight_sum}}));
}

ordered_json gate_result_json(const naqc_gate_result& result) {
  return ordered_json{{"status", status_text(result.status)},
                      {"diagnosis", diagnosis_text(result.diagnosis)},
                      {"params", to_json(result.params)},
                      {"tau", result.tau},
                      {"residual", result.residual},
                      {"predicted_output", to_json(result.predicted_output)},
                      {"hold_hamiltonian", matrix_json(result.hold_hamiltonian)}};
}

void run_synthesize_gate(const StateFlags& sf, const OutputFlags& of,
                         const std::string& gate_name, double omega0, double omega,
                         bool relaxed) {
  const naqc_qubit input = sf.resolve();
  int gate = NAQC_GATE_NOT;
  if (gate_name == "z") gate = NAQC_GATE_Z;
  if (gate_name == "hadamard") gate = NAQC_GATE_HADAMARD;
  naqc_gate_result result;
  const naqc_status status =
      naqc_solve_gate_time(gate, &input, omega0, omega,
                           relaxed ? NAQC_SOLVE_UP_TO_PHASE : NAQC_SOLVE_LITERAL,
                           &result);
  if (status != NAQC_OK && status != NAQC_ERROR_INFEASIBLE &&
      status != NAQC_ERROR_NOT_FOUND)
    require_ok(status, "solve_gate_time");

  ordered_json report{{"command", "synthesize"},
                      {"mode", relaxed ? "up_to_phase" : "literal"},
                      {"gate", gate_name},
                      {"input", to_json(input)}};
  report.update(gate_result_json(result));
  if (status == NAQC_OK) {
    naqc_qubit target;
    require_ok(naqc_gate_target(gate, &input, &target), "gate_target");
    const naqc_qubit start{{1.0, 0.0}, {0.0, 0.0}};
    naqc_gate_verification verification;
    require_ok(naqc_verify_gate(&result, &start, &target, &verification),
               "verify_gate");
    report["verification"] =
        ordered_json{{"analytic_fidelity", verification.analytic_fidelity},
                     {"ode_fidelity", verification.ode_fidelity},
                     {"phase_offset_c0", verification.phase_offset_c0},
                     {"phase_offset_c1", verification.phase_offset_c1}};
  }
  emit(of, "synthesize", dump(report));
  if (status != NAQC_OK)
    throw NumericalFailure(std::string("synthesis ") + status_text(result.status) +
                           ": " + diagnosis_text(result.diagnosis) +
                           "; report written");
}

void run_synthesize_general(const StateFlags& sf, const OutputFlags& of,
                            const std::string& target_a0, const std::string& target_a1,
                            const naqc_synth_bounds& bounds,
                            const naqc_synth_grid& grid) {
  const naqc_qubit input = sf.resolve();
  naqc_qubit target{parse_complex(target_a0), parse_complex(target_a1)};
  const double total = abs2(target.a0) + abs2(target.a1);
  if (std::abs(total - 1.0) > 1e-9)
    throw ValidationFailure("target state is not normalized");
  naqc_gate_result result;
  const naqc_status status = naqc_synthesize(&input, &target, &bounds, &grid, &result);
  if (status != NAQC_OK && status != NAQC_ERROR_NOT_FOUND)
    require_ok(status, "synthesize");

  ordered_json report{{"command", "synthesize"},
                      {"mode", "general"},
                      {"input", to_json(input)},
                      {"target", to_json(target)}};
  report.update(gate_result_json(result));
  if (status == NAQC_OK) {
    naqc_gate_verification verification;
    require_ok(naqc_verify_gate(&result, &input, &target, &verification), "verify_gate");
    report["verification"] =
        ordered_json{{"analytic_fidelity", verification.analytic_fidelity},
                     {"ode_fidelity", verification.ode_fidelity},
                     {"phase_offset_c0", verification.phase_offset_c0},
                     {"phase_offset_c1", verification.phase_offset_c1}};
  }
  emit(of, "synthesize", dump(report));
  if (status != NAQC_OK)
    throw NumericalFailure("synthesis not_found: best infidelity " +
                           fmt(result.residual) + "; report written");
}

void run_swap(const OutputFlags& of, const std::string& a_text,
              const std::string& b_text, const ParamsFlags& pf, bool has_drive,
              double t, int particle) {
  const naqc_complex a = parse_complex(a_text);
  const naqc_complex b = parse_complex(b_text);
  naqc_twoqubit plus, minus;
  require_ok(naqc_swap_outputs(a, b, &plus, &minus), "swap_outputs");
  double c_plus = 0.0, c_minus = 0.0;
  require_ok(naqc_concurrence(&plus, &c_plus), "concurrence");
  require_ok(naqc_concurrence(&minus, &c_minus), "concurrence");
  ordered_json report{
      {"command", "swap"},
      {"a", to_json(a)},
      {"b", to_json(b)},
      {"base",
       ordered_json::array({ordered_json{{"amps", to_json(plus)}, {"concurrence", c_plus}},
                            ordered_json{{"amps", to_json(minus)},
                                         {"concurrence", c_minus}}})}};
  if (has_drive) {
    const naqc_params params = pf.resolve();
    naqc_twoqubit family[4];
    require_ok(naqc_swap_family(&params, t, a, b, particle, family), "swap_family");
    ordered_json family_json = ordered_json::array();
    for (const naqc_twoqubit& member : family) {
      double c = 0.0;
      require_ok(naqc_concurrence(&member, &c), "concurrence");
      family_json.push_back(
          ordered_json{{"amps", to_json(member)}, {"concurrence", c}});
    }
    report["drive"] = ordered_json{{"params", to_json(params)}, {"t", t}};
    report["particle"] = particle;
    report["family"] = family_json;
  }
  emit(of, "swap", dump(report));
}

void run_sweep(const ParamsFlags& pf, const OutputFlags& of, const std::string& vary,
               double from, double to, int steps) {
  if (steps < 2) throw ValidationFailure("--steps must be >= 2");
  const std::vector<double> values = linspace(from, to, steps);
  std::string csv = "omega0,omega,theta,rabi,adiabaticity,max_transition\n";
  ordered_json rows = ordered_json::array();
  for (const double value : values) {
    naqc_params params = pf.resolve();
    if (vary == "omega0") params.omega0 = value;
    if (vary == "omega") params.omega = value;
    if (vary == "theta") params.theta = value;
    double rabi = 0.0, adiabaticity = 0.0;
    require_ok(naqc_rabi_frequency(&params, &rabi), "rabi_frequency");
    require_ok(naqc_adiabaticity_parameter(&params, &adiabaticity),
               "adiabaticity_parameter");
    // peak transition population |c1(pi/wb)|^2 = (omega sin theta / wb)^2
    double max_transition = 0.0;
    if (rabi > 0.0) {
      naqc_complex c0, c1;
      require_ok(naqc_analytic_coefficients(&params, kPi / rabi, NAQC_BRANCH_UP, &c0, &c1),
                 "analytic_coefficients");
      max_transition = abs2(c1);
    }
    csv += fmt(params.omega0) + ',' + fmt(params.omega) + ',' + fmt(params.theta) +
           ',' + fmt(rabi) + ',' + fmt(adiabaticity) + ',' + fmt(max_transition) + '\n';
    rows.push_back(ordered_json{{"omega0", params.omega0},
                                {"omega", params.omega},
                                {"theta", params.theta},
                                {"rabi", rabi},
                                {"adiabaticity", adiabaticity},
                                {"max_transition", max_transition}});
  }
  if (of.format == "csv") {
    emit(of, "sweep", csv);
  } else {
    emit(of, "sweep",
         dump(ordered_json{{"command", "sweep"},
                           {"vary", vary},
                           {"from", from},
                           {"to", to},
                           {"steps", steps},
                           {"rows", rows}}));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-adiabatic spin-qubit control toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", naqc_version());
  std::string config_path_display;  // --config is handled before parsing

  try {
    // evolve ---------------------------------------------------------------
    auto* evolve = app.add_subcommand(
        "evolve", "integrate or evaluate the closed form over a time grid");
    evolve->add_option("--config", config_path_display,
                      "read options from a flat key=value file");
    ParamsFlags evolve_params;
    evolve_params.attach(evolve);
    StateFlags evolve_state;
    evolve_state.attach(evolve, false);
    OutputFlags evolve_out;
    evolve_out.attach(evolve, "csv");
    double t_start = 0.0, t_end = 0.0, tolerance = 1e-9;
    int points = 101;
    std::string method = "ode", branch = "up";
    evolve->add_option("--t-start", t_start, "first sample time");
    evolve->add_option("--t-end", t_end, "last sample time")->required();
    evolve->add_option("--points", points, "number of samples (>= 2)");
    evolve->add_option("--tolerance", tolerance, "integrator local error tolerance");
    evolve->add_option("--method", method, "ode (Schrodinger oracle) or analytic")
        ->check(CLI::IsMember({"ode", "analytic"}));
    evolve->add_option("--branch", branch, "branch for --method analytic")
        ->check(CLI::IsMember({"up", "down"}));
    evolve->callback([&] {
      run_evolve(evolve_params, evolve_state, evolve_out,
                 evolve_params.time_in(t_start), evolve_params.time_in(t_end),
                 points, tolerance, method, branch);
    });

    // adiabaticity ----------------------------------------------------------
    auto* adiabaticity =
        app.add_subcommand("adiabaticity", "closed-form and numeric adiabaticity check");
    adiabaticity->add_option("--config", config_path_display,
                      "read options from a flat key=value file");
    ParamsFlags adiabaticity_params;
    adiabaticity_params.attach(adiabaticity);
    OutputFlags adiabaticity_out;
    adiabaticity_out.attach(adiabaticity);
    double ad_t_start = 0.0, ad_t_end = 10.0, ad_threshold = 0.1;
    int ad_points = 101;
    adiabaticity->add_option("--t-start", ad_t_start, "first sample time");
    adiabaticity->add_option("--t-end", ad_t_end, "last sample time");
    adiabaticity->add_option("--points", ad_points, "number of samples (>= 2)");
    adiabaticity->add_option("--threshold", ad_threshold, "adiabaticity threshold");
    adiabaticity->callback([&] {
      run_adiabaticity(adiabaticity_params, adiabaticity_out,
                       adiabaticity_params.time_in(ad_t_start),
                       adiabaticity_params.time_in(ad_t_end), ad_points,
                       ad_threshold);
    });

    // multiply ---------------------------------------------------------------
    auto* multiply =
        app.add_subcommand("multiply", "one non-adiabatic boost: two clusters from one");
    multiply->add_option("--config", config_path_display,
                      "read options from a flat key=value file");
    ParamsFlags multiply_params;
    multiply_params.attach(multiply);
    StateFlags multiply_state;
    multiply_state.attach(multiply, true);
    OutputFlags multiply_out;
    multiply_out.attach(multiply);
    double multiply_t = 0.0, multiply_threshold = 0.1;
    std::uint64_t ensemble = 0;
    std::uint64_t seed_value = 0;
    auto* seed_opt =
        multiply->add_option("--seed", seed_value, "seed for sampled cluster counts");
    multiply->add_option("--t", multiply_t, "evolution time inside the device")
        ->required();
    multiply->add_option("--threshold", multiply_threshold,
                         "adiabaticity warning threshold");
    multiply->add_option("--ensemble", ensemble, "ensemble size for cluster counts");
    multiply->callback([&] {
      run_multiply(multiply_params, multiply_state, multiply_out,
                   multiply_params.time_in(multiply_t), multiply_threshold, ensemble,
                   seed_opt->count() > 0 ? std::optional<std::uint64_t>(seed_value)
                                         : std::nullopt);
    });

    // cascade ---------------------------------------------------------------
    auto* cascade = app.add_subcommand(
        "cascade", "n chained boosts: 2^n weighted clusters from one qubit");
    cascade->add_option("--config", config_path_display,
                      "read options from a flat key=value file");
    ParamsFlags cascade_params;
    cascade_params.attach(cascade);
    StateFlags cascade_state;
    cascade_state.attach(cascade, true);
    OutputFlags cascade_out;
    cascade_out.attach(cascade);
    double cascade_t = 0.0, cascade_threshold = 0.1;
    int stages = 0;
    cascade->add_option("--stages", stages, "number of boosters (>= 0)")->required();
    cascade->add_option("--t", cascade_t, "evolution time per stage")->required();
    cascade->add_option("--threshold", cascade_threshold,
                        "adiabaticity warning threshold");
    cascade->callback([&] {
      run_cascade(cascade_params, cascade_state, cascade_out,
                  cascade_params.time_in(cascade_t), stages, cascade_threshold);
    });

    // synthesize --------------------------------------------------------------
    auto* synthesize = app.add_subcommand(
        "synthesize", "solve gate timing conditions or search the parameter box");
    synthesize->add_option("--config", config_path_display,
                      "read options from a flat key=value file");
    StateFlags synth_state;
    synth_state.attach(synthesize, true);
    OutputFlags synth_out;
    synth_out.attach(synthesize);
    std::string gate_name;
    double synth_omega0 = 1.0, synth_omega = 2.0;
    bool relaxed = false;
    std::string target_a0, target_a1;
    naqc_synth_bounds bounds{1.0, 1.0, 2.0, 2.0, 0.0, kPi / 2, 0.0, 10.0};
    naqc_synth_grid grid{5, 9, 13, 96, 200};
    auto* gate_opt = synthesize->add_option("--gate", gate_name, "not, z or hadamard")
                         ->check(CLI::IsMember({"not", "z", "hadamard"}));
    synthesize->add_option("--omega0", synth_omega0, "Larmor frequency");
    synthesize->add_option("--omega", synth_omega, "field rotation rate");
    synthesize->add_flag("--relaxed", relaxed, "solve up to a global phase");
    auto* target0_opt =
        synthesize->add_option("--target-a0", target_a0, "target |0> amplitude");
    auto* target1_opt =
        synthesize->add_option("--target-a1", target_a1, "target |1> amplitude");
    synthesize->add_option("--omega0-min", bounds.omega0_min, "search box");
    synthesize->add_option("--omega0-max", bounds.omega0_max, "search box");
    synthesize->add_option("--omega-min", bounds.omega_min, "search box");
    synthesize->add_option("--omega-max", bounds.omega_max, "search box");
    synthesize->add_option("--theta-min", bounds.theta_min, "search box");
    synthesize->add_option("--theta-max", bounds.theta_max, "search box");
    synthesize->add_option("--t-min", bounds.t_min, "search box");
    synthesize->add_option("--t-max", bounds.t_max, "search box");
    synthesize->add_option("--grid-omega0", grid.n_omega0, "grid resolution");
    synthesize->add_option("--grid-omega", grid.n_omega, "grid resolution");
    synthesize->add_option("--grid-theta", grid.n_theta, "grid resolution");
    synthesize->add_option("--grid-t", grid.n_t, "grid resolution");
    synthesize->callback([&] {
      const bool general = target0_opt->count() > 0 || target1_opt->count() > 0;
      if (general && gate_opt->count() > 0)
        throw ValidationFailure("--gate and --target-a0/--target-a1 are exclusive");
      if (general) {
        if (target0_opt->count() == 0 || target1_opt->count() == 0)
          throw ValidationFailure("both --target-a0 and --target-a1 are required");
        run_synthesize_general(synth_state, synth_out, target_a0, target_a1, bounds,
                               grid);
      } else {
        if (gate_opt->count() == 0)
          throw ValidationFailure("pass --gate or a --target-a0/--target-a1 pair");
        run_synthesize_gate(synth_state, synth_out, gate_name, synth_omega0,
                            synth_omega, relaxed);
      }
    });

    // swap ---------------------------------------------------------------------
    auto* swap = app.add_subcommand(
        "swap", "swap-output entangled pair and its non-adiabatic four-state family");
    swap->add_option("--config", config_path_display,
                      "read options from a flat key=value file");
    OutputFlags swap_out;
    swap_out.attach(swap);
    ParamsFlags swap_params;
    swap_params.attach(swap, false);
    std::string a_text, b_text;
    double swap_t = 0.0;
    int particle = 2;
    swap->add_option("--a", a_text, "|00> amplitude (complex literal)")->required();
    swap->add_option("--b", b_text, "|11> amplitude (complex literal)")->required();
    auto* swap_t_opt =
        swap->add_option("--t", swap_t, "drive time (enables the four-state family)");
    swap->add_option("--particle", particle, "particle the drive acts on (2 or 3)")
        ->check(CLI::IsMember({2, 3}));
    swap->callback([&] {
      run_swap(swap_out, a_text, b_text, swap_params, swap_t_opt->count() > 0,
               swap_t_opt->count() > 0 ? swap_params.time_in(swap_t) : 0.0, particle);
    });

    // sweep ----------------------------------------------------------------------
    auto* sweep =
        app.add_subcommand("sweep", "sweep one drive parameter, tabulate diagnostics");
    sweep->add_option("--config", config_path_display,
                      "read options from a flat key=value file");
    ParamsFlags sweep_params;
    sweep_params.attach(sweep);
    OutputFlags sweep_out;
    sweep_out.attach(sweep, "csv");
    std::string vary;
    double from = 0.0, to = 1.0;
    int steps = 2;
    sweep->add_option("--vary", vary, "parameter to sweep")
        ->check(CLI::IsMember({"omega0", "omega", "theta"}))
        ->required();
    sweep->add_option("--from", from, "sweep start")->required();
    sweep->add_option("--to", to, "sweep end")->required();
    sweep->add_option("--steps", steps, "number of sweep points (>= 2)")->required();
    sweep->callback([&] {
      run_sweep(sweep_params, sweep_out, vary, from, to, steps);
    });

    // later occurrences win, so explicit flags override config-file values
    for (CLI::App* sub :
         {evolve, adiabaticity, multiply, cascade, synthesize, swap, sweep}) {
      for (CLI::Option* option : sub->get_options())
        option->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }

    const std::vector<std::string> args = assemble_args(argc, argv);
    std::vector<const char*> argv2;
    argv2.reserve(args.size());
    for (const std::string& arg : args) argv2.push_back(arg.c_str());
    app.parse(static_cast<int>(argv2.size()), argv2.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
