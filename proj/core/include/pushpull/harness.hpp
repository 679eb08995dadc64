#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pushpull/allcast.hpp"
#include "pushpull/distribution.hpp"

namespace pushpull {

enum class ExperimentKind {
  kAllcast,
  kAllcastVanishing,
  kLayered,
  kMaxflow,
  kRelayMulti,
  kMulticast,
  kMatching,
  kStrengthSweep,
};

std::string to_string(ExperimentKind kind);
/// Throws InputError for an unknown name.
ExperimentKind parse_experiment_kind(const std::string& name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kAllcast;
  std::vector<std::size_t> n;      // nodes, relays for the flow kinds, side size for matching
  std::vector<std::size_t> k;      // session sizes (relay_multi, multicast)
  std::vector<double> alpha;       // k = ceil(alpha n) when `k` is empty
  double p = 0.5;
  std::optional<CapacityDistribution> distribution;  // layered, strength_sweep
  double eps = 0.25;
  double tau = 10.0;               // allcast_vanishing
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::optional<PullMode> pull;    // default depends on the kind
  bool upper_bound = false;        // add the cut-bound column
  std::size_t jobs = 1;
  std::string output;
};

/// Reads a JSON experiment description; errors name the offending field.
ExperimentConfig parse_experiment_config(const std::string& json_text);

/// Throws ParameterError/InputError when the config cannot be run.
void validate(const ExperimentConfig& cfg);

/// Restricted pulls for allcast and the single-session flows, all helpers otherwise.
PullMode default_pull(ExperimentKind kind);

struct TrialOutcome {
  bool success = false;
  double norm_rate = 0.0;
  std::size_t bits = 0;          // bits held by every receiver
  bool a1 = false;
  bool a2 = false;
  bool a3 = false;
  bool m = false;
  std::optional<double> upper_bound;  // normalized like norm_rate
  bool audit_ok = true;          // independent delivery audit
};

struct CellStats {
  ExperimentKind kind = ExperimentKind::kAllcast;
  std::size_t n = 0;
  std::size_t k = 0;             // 0 where the kind has no session size
  double p = 0.0;
  double eps = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_freq = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  double mean_norm_rate = 0.0;
  double theory_target = 0.0;
  std::optional<double> mean_upper_bound;
  // trials in which each event fired
  std::size_t a1 = 0;
  std::size_t a2 = 0;
  std::size_t a3 = 0;
  std::size_t m = 0;
  /// Failed trials charged to their earliest event (order A1, A2, A3, M).
  std::size_t failed_a1 = 0;
  std::size_t failed_a2 = 0;
  std::size_t failed_a3 = 0;
  std::size_t failed_m = 0;
  std::size_t audit_failures = 0;
  std::vector<TrialOutcome> outcomes;
};

/// Grid cells in order: n outer, then k (or alpha).
struct Cell {
  std::size_t n = 0;
  std::size_t k = 0;
};
std::vector<Cell> experiment_cells(const ExperimentConfig& cfg);

/// Seed of trial `trial` in cell `cell`: derive_seed(root, kExperimentTrial, {kind, cell, trial}).
std::uint64_t trial_seed(const ExperimentConfig& cfg, std::size_t cell, std::size_t trial);

/// One seeded instance of the configured kind.
TrialOutcome run_trial(const ExperimentConfig& cfg, const Cell& cell, std::uint64_t seed);

/// Theory value the normalized rate is compared with.
double theory_target(const ExperimentConfig& cfg, const Cell& cell);

/// Runs every cell with `cfg.jobs` worker threads; the result does not depend
/// on the thread count.
std::vector<CellStats> run_experiment(const ExperimentConfig& cfg);

/// CSV: n,k,p,eps,trials,success_freq,wilson_low,wilson_high,mean_norm_rate,
/// theory_target,a1,a2,a3,m (+ upper_bound), rows sorted by n then k.
std::string convergence_table(const std::vector<CellStats>& stats, bool upper_bound_column = false);

}  // namespace pushpull
