#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "core/types.hpp"

namespace naqc {

// Spin state correlated with the spatial branch taken through the device.
// The spatial wave functions are reduced to the scalar weights
// w = integral(phi^2 dX); the ideal device has w_up = w_down = 1.
struct PathSpinState {
  QubitState up_spin;
  QubitState down_spin;
  Complex up_amp{0.0, 0.0};
  Complex down_amp{0.0, 0.0};
  double w_up = 1.0;
  double w_down = 1.0;
};

struct ClusterReport {
  std::uint64_t n_up = 0;
  std::uint64_t n_down = 0;
  QubitState logical_up;
  QubitState logical_down;
};

// Everything needed to invert a converter post-selection by amplitude
// bookkeeping. `input` is the reassembled pre-selection state, kept as an
// audit copy; the reconstruction itself uses the amplitudes.
struct ConversionRecord {
  QubitState input;
  Branch selected_branch = Branch::Up;
  Complex kept_amp{0.0, 0.0};
  Complex discarded_amp{0.0, 0.0};
  QubitState discarded_state;
};

struct MultiplyResult {
  QubitState up_state;
  QubitState down_state;
  double p_up = 0.0;
  double p_down = 0.0;
  bool adiabatic_warning = false;  // drive looks adiabatic, transfer suppressed
};

struct Cluster {
  QubitState state;
  double weight = 0.0;
};

struct CascadeStage {
  ControlParams params;
  double t = 0.0;
};

// Slow passage through the device: |0> rides the up branch, |1> the down
// branch, with the accumulated precession phases e^{-+ i omega0 t} carried on
// the branch amplitudes (omega0_t = omega0 * t, default none).
PathSpinState adiabatic_split(const QubitState& q, double w_up = 1.0,
                              double w_down = 1.0, double omega0_t = 0.0);

// |amp|^2 * w for the chosen branch.
double branch_probability(const PathSpinState& s, Branch branch);

// Deterministic expected counts n = round(N * P), round-half-to-even.
ClusterReport cluster_counts(const PathSpinState& s, std::uint64_t n_particles);

// Binomial draw with a seeded generator, for ensemble realism.
ClusterReport cluster_counts_sampled(const PathSpinState& s, std::uint64_t n_particles,
                                     std::uint64_t seed);

// Releases only the chosen branch: a superposed input becomes a definite
// (classical-bit-like) output plus a record sufficient to invert the step.
// Fails with EmptyBranch when the kept branch probability is below 1e-15.
std::pair<QubitState, ConversionRecord> converter_oracle(const PathSpinState& s,
                                                         Branch keep);

// Restores the pre-selection state from the record and the kept output,
// exactly (the discarded amplitude was never dropped). Fails with
// InconsistentRecord when the stored amplitudes do not renormalize to 1.
QubitState reverse_converter(const ConversionRecord& record,
                             const QubitState& kept_output);

// One non-adiabatic boost: the input splits into weighted up/down clusters
// whose spin states are the closed-form branch evolutions assembled in the
// Diagonalized basis at time t. Runs regardless of the drive regime;
// adiabatic_warning flags adiabaticity_parameter < warn_threshold.
MultiplyResult nonadiabatic_multiply(const ControlParams& p, const QubitState& q,
                                     double t, double warn_threshold = 0.1);

// n chained boosts: 2^n clusters with weights summing to 1.
std::vector<Cluster> cascade(std::span<const CascadeStage> stages, const QubitState& q,
                             double warn_threshold = 0.1);

}  // namespace naqc
