#include "core/ensemble.hpp"

#include <cmath>
#include <random>

#include "core/dynamics.hpp"

namespace naqc {

namespace {

constexpr double kEmptyBranchTol = 1e-15;

std::uint64_t round_half_even(double x) {
  // llrint honours the default FE_TONEAREST mode, which is half-to-even
  return static_cast<std::uint64_t>(std::llrint(x));
}

QubitState reassemble(const PathSpinState& s) {
  return {s.up_amp * s.up_spin.a0 + s.down_amp * s.down_spin.a0,
          s.up_amp * s.up_spin.a1 + s.down_amp * s.down_spin.a1};
}

}  // namespace

PathSpinState adiabatic_split(const QubitState& q, double w_up, double w_down,
                              double omega0_t) {
  require_normalized(q, 1e-6, "input qubit");
  if (!(w_up >= 0.0 && w_up <= 1.0) || !(w_down >= 0.0 && w_down <= 1.0))
    fail(ErrorCode::InvalidArgument, "branch weights must lie in [0, 1]");
  if (!std::isfinite(omega0_t))
    fail(ErrorCode::InvalidArgument, "omega0_t must be finite");
  const Complex up_phase = std::exp(Complex(0.0, -omega0_t));
  PathSpinState s;
  s.up_spin = {Complex(1.0, 0.0), Complex(0.0, 0.0)};
  s.down_spin = {Complex(0.0, 0.0), Complex(1.0, 0.0)};
  s.up_amp = q.a0 * up_phase;
  s.down_amp = q.a1 * std::conj(up_phase);
  s.w_up = w_up;
  s.w_down = w_down;
  return s;
}

double branch_probability(const PathSpinState& s, Branch branch) {
  return branch == Branch::Up ? std::norm(s.up_amp) * s.w_up
                              : std::norm(s.down_amp) * s.w_down;
}

ClusterReport cluster_counts(const PathSpinState& s, std::uint64_t n_particles) {
  ClusterReport report;
  report.n_up = round_half_even(static_cast<double>(n_particles) *
                                branch_probability(s, Branch::Up));
  report.n_down = round_half_even(static_cast<double>(n_particles) *
                                  branch_probability(s, Branch::Down));
  report.logical_up = s.up_spin;
  report.logical_down = s.down_spin;
  return report;
}

ClusterReport cluster_counts_sampled(const PathSpinState& s, std::uint64_t n_particles,
                                     std::uint64_t seed) {
  const double p_up = branch_probability(s, Branch::Up);
  const double p_down = branch_probability(s, Branch::Down);
  std::mt19937_64 rng(seed);
  ClusterReport report;
  report.logical_up = s.up_spin;
  report.logical_down = s.down_spin;
  std::binomial_distribution<std::int64_t> up_draw(
      static_cast<std::int64_t>(n_particles), std::min(p_up, 1.0));
  report.n_up = static_cast<std::uint64_t>(up_draw(rng));
  const std::uint64_t remaining = n_particles - report.n_up;
  const double rest = 1.0 - p_up;
  const double p_cond = rest > kEmptyBranchTol ? std::min(p_down / rest, 1.0) : 0.0;
  std::binomial_distribution<std::int64_t> down_draw(
      static_cast<std::int64_t>(remaining), p_cond);
  report.n_down = static_cast<std::uint64_t>(down_draw(rng));
  return report;
}

std::pair<QubitState, ConversionRecord> converter_oracle(const PathSpinState& s,
                                                         Branch keep) {
  if (branch_probability(s, keep) < kEmptyBranchTol)
    fail(ErrorCode::EmptyBranch, "kept branch has (near-)zero probability");
  const bool up = keep == Branch::Up;
  ConversionRecord record;
  record.input = reassemble(s);
  record.selected_branch = keep;
  record.kept_amp = up ? s.up_amp : s.down_amp;
  record.discarded_amp = up ? s.down_amp : s.up_amp;
  record.discarded_state = up ? s.down_spin : s.up_spin;
  return {normalized(up ? s.up_spin : s.down_spin), record};
}

QubitState reverse_converter(const ConversionRecord& record,
                             const QubitState& kept_output) {
  require_normalized(kept_output, 1e-6, "kept_output");
  const double total = std::norm(record.kept_amp) + std::norm(record.discarded_amp);
  if (std::abs(total - 1.0) > 1e-9)
    fail(ErrorCode::InconsistentRecord,
         "record amplitudes do not renormalize to 1");
  return {record.kept_amp * kept_output.a0 +
              record.discarded_amp * record.discarded_state.a0,
          record.kept_amp * kept_output.a1 +
              record.discarded_amp * record.discarded_state.a1};
}

MultiplyResult nonadiabatic_multiply(const ControlParams& p, const QubitState& q,
                                     double t, double warn_threshold) {
  require_normalized(q, 1e-6, "input qubit");
  const auto [a0, a1] = analytic_coefficients(p, t, Branch::Up);
  const auto [b0, b1] = analytic_coefficients(p, t, Branch::Down);
  const EigenPair basis = instantaneous_basis(p, t, BasisMode::Diagonalized);
  MultiplyResult result;
  result.up_state = from_basis(basis, a0, a1);
  result.down_state = from_basis(basis, b0, b1);
  result.p_up = std::norm(q.a0);
  result.p_down = std::norm(q.a1);
  result.adiabatic_warning = adiabaticity_parameter(p) < warn_threshold;
  return result;
}

std::vector<Cluster> cascade(std::span<const CascadeStage> stages, const QubitState& q,
                             double warn_threshold) {
  require_normalized(q, 1e-6, "input qubit");
  std::vector<Cluster> clusters{{q, 1.0}};
  for (const CascadeStage& stage : stages) {
    std::vector<Cluster> next;
    next.reserve(clusters.size() * 2);
    for (const Cluster& cluster : clusters) {
      const MultiplyResult r =
          nonadiabatic_multiply(stage.params, cluster.state, stage.t, warn_threshold);
      next.push_back({r.up_state, cluster.weight * r.p_up});
      next.push_back({r.down_state, cluster.weight * r.p_down});
    }
    clusters = std::move(next);
  }
  return clusters;
}

}  // namespace naqc
