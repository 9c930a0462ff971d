#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rlab/diagnostics.hpp"
#include "rlab/estimators.hpp"
#include "rlab/model.hpp"
#include "rlab/rng.hpp"

namespace rlab {

enum class EstimatorKind { MleExhaustive, Spectral, SdpAdmm };

std::string estimator_name(EstimatorKind e);           // "mle" / "spectral" / "sdp"
EstimatorKind estimator_from_name(const std::string&);

// Grid realization: each SNR value is reached by alpha = sqrt(8 * snr) with
// beta = 0 and tau = 1 fixed.
struct SweepConfig {
  Model model = Model::Sbm;
  std::vector<int> n_values;
  std::vector<double> snr_grid;
  std::optional<double> gamma;
  int trials_per_point = 1;
  std::vector<EstimatorKind> estimators;
  bool run_certificate = false;
  bool run_diagnostics = false;
  std::uint64_t master_seed = 0;
  bool permute_labels = false;

  void validate() const;  // throws InvalidArgs
};

struct GridPoint {
  int n = 0;
  double snr = 0.0;
  std::optional<double> gamma;
};

struct TrialResult {
  GridPoint grid_point;
  int trial_index = 0;
  std::uint64_t seed = 0;
  EstimatorKind estimator = EstimatorKind::Spectral;
  bool exact = false;
  double agreement = 0.0;
  std::optional<bool> certificate_holds;
  std::optional<bool> bad_set_nonempty;
  std::optional<bool> solver_converged;
  // Kept for the CSV contract but always 0: rows must be byte-identical
  // across re-runs and worker counts, which rules out measured wall time.
  double wall_time_ms = 0.0;
  bool errored = false;
  std::string error;
};

struct SummaryCell {
  GridPoint grid_point;
  EstimatorKind estimator = EstimatorKind::Spectral;
  int trials = 0;
  int exact_count = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct SweepResult {
  SweepConfig config;
  std::vector<TrialResult> rows;
  std::vector<SummaryCell> summary;
};

// Grid points in canonical order: n_values outer, snr_grid inner.
std::vector<GridPoint> expand_grid(const SweepConfig& config);

// Model parameters for one grid point under the canonical slice.
ModelParams params_for_point(const GridPoint& point, Model model);

// Runs one trial (sample, optional hidden relabeling, every configured
// estimator, optional certificate and bad-pair diagnostics); one row per
// estimator. Estimator failures become errored rows, not exceptions.
std::vector<TrialResult> run_trial(const SweepConfig& config,
                                   const GridPoint& point,
                                   std::size_t grid_index, int trial_index);

// Executes all grid points x trials, optionally on several worker threads.
// The result is deterministic and independent of the worker count.
SweepResult run_sweep(const SweepConfig& config, int workers = 1);

// Per-(grid point, estimator) recovery rates with Wilson 95% intervals;
// errored rows are excluded from the counts.
std::vector<SummaryCell> summarize(const std::vector<TrialResult>& rows);

// Wilson score interval at z = 1.96.
std::pair<double, double> wilson_interval(int successes, int trials);

void write_rows_csv(std::ostream& os, const SweepResult& result);
void write_summary_json(std::ostream& os, const SweepResult& result);

std::string sweep_config_to_json(const SweepConfig& config);
SweepConfig sweep_config_from_json(const std::string& text);

}  // namespace rlab
