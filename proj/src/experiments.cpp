#include "rlab/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "rlab/certificates.hpp"
#include "rlab/io.hpp"

namespace rlab {

using ordered_json = nlohmann::ordered_json;

std::string estimator_name(EstimatorKind e) {
  switch (e) {
    case EstimatorKind::MleExhaustive: return "mle";
    case EstimatorKind::Spectral: return "spectral";
    case EstimatorKind::SdpAdmm: return "sdp";
  }
  throw InvalidArgs("unknown estimator");
}

EstimatorKind estimator_from_name(const std::string& s) {
  if (s == "mle") return EstimatorKind::MleExhaustive;
  if (s == "spectral") return EstimatorKind::Spectral;
  if (s == "sdp") return EstimatorKind::SdpAdmm;
  throw InvalidArgs("unknown estimator name: " + s);
}

void SweepConfig::validate() const {
  if (n_values.empty()) throw InvalidArgs("n_values must be nonempty");
  if (snr_grid.empty()) throw InvalidArgs("snr_grid must be nonempty");
  if (trials_per_point < 1) throw InvalidArgs("trials_per_point must be >= 1");
  if (estimators.empty()) throw InvalidArgs("estimators must be nonempty");
  for (double s : snr_grid)
    if (!(s > 0.0)) throw InvalidArgs("snr grid values must be positive");
  if (model == Model::Pds && !gamma)
    throw InvalidArgs("planted-model sweep needs gamma");
  for (int n : n_values) {
    // Constructing the params surfaces bad n / gamma combinations up front.
    const ModelParams p = params_for_point(GridPoint{n, snr_grid.front(), gamma}, model);
    if (model == Model::Sbm && n % 2 != 0)
      throw InvalidArgs("two-community sweep needs even n");
    for (EstimatorKind e : estimators) {
      if (e == EstimatorKind::MleExhaustive) {
        if (model == Model::Sbm && n > 20)
          throw InvalidArgs("exhaustive MLE in a sweep needs n <= 20");
        if (model == Model::Pds) {
          double c = 1.0;
          const int k = p.planted_size();
          for (int i = 1; i <= k; ++i) c *= static_cast<double>(n - k + i) / i;
          if (c > 2e5)
            throw InvalidArgs("exhaustive PDS MLE guard exceeded in sweep");
        }
      }
      if (e == EstimatorKind::Spectral && model == Model::Pds)
        throw InvalidArgs("the spectral estimator is defined for the two-community model only");
    }
  }
}

std::vector<GridPoint> expand_grid(const SweepConfig& config) {
  std::vector<GridPoint> grid;
  grid.reserve(config.n_values.size() * config.snr_grid.size());
  for (int n : config.n_values)
    for (double s : config.snr_grid) grid.push_back(GridPoint{n, s, config.gamma});
  return grid;
}

ModelParams params_for_point(const GridPoint& point, Model model) {
  const double alpha = std::sqrt(8.0 * point.snr);
  return ModelParams::make(point.n, alpha, 0.0, 1.0,
                           model == Model::Pds ? point.gamma : std::nullopt);
}

namespace {

TrialResult base_row(const GridPoint& point, int trial_index,
                     std::uint64_t seed, EstimatorKind est) {
  TrialResult row;
  row.grid_point = point;
  row.trial_index = trial_index;
  row.seed = seed;
  row.estimator = est;
  return row;
}

}  // namespace

std::vector<TrialResult> run_trial(const SweepConfig& config,
                                   const GridPoint& point,
                                   std::size_t grid_index, int trial_index) {
  const std::uint64_t seed =
      derive_trial_seed(config.master_seed, grid_index, trial_index);
  const ModelParams params = params_for_point(point, config.model);

  Sample sample = config.model == Model::Sbm ? sample_gwsbm(params, seed)
                                             : sample_gwpdsm(params, seed);
  if (config.permute_labels) {
    const std::vector<int> perm =
        random_permutation(point.n, mix64(seed ^ 0xC2B2AE3D27D4EB4FULL));
    sample.graph = sample.graph.permuted(perm);
    sample.labels = sample.labels.permuted(perm);
  }
  const WeightedGraph& graph = sample.graph;
  const LabelVector& truth = sample.labels;

  std::optional<bool> cert_holds;
  if (config.run_certificate) {
    if (config.model == Model::Sbm)
      cert_holds = certificate_sbm(graph, truth, params).holds;
    else
      cert_holds = certificate_pds(graph, truth, params).holds;
  }
  std::optional<bool> bad_nonempty;
  if (config.run_diagnostics) {
    bad_nonempty = (config.model == Model::Sbm ? bad_pairs_sbm(graph, truth)
                                               : bad_pairs_pds(graph, truth))
                       .nonempty;
  }

  std::vector<TrialResult> rows;
  for (EstimatorKind est : config.estimators) {
    TrialResult row = base_row(point, trial_index, seed, est);
    row.certificate_holds = cert_holds;
    row.bad_set_nonempty = bad_nonempty;
    try {
      EstimateResult estimate;
      switch (est) {
        case EstimatorKind::MleExhaustive:
          estimate = config.model == Model::Sbm
                         ? mle_sbm_exhaustive(graph)
                         : mle_pds_exhaustive(graph, *point.gamma);
          break;
        case EstimatorKind::Spectral:
          estimate = spectral_sbm(graph, params);
          break;
        case EstimatorKind::SdpAdmm: {
          const SolverOptions opts;
          if (config.model == Model::Sbm) {
            estimate = round_sdp_sbm(sdp_sbm(graph, opts));
          } else {
            estimate = round_sdp_pds(sdp_pds(graph, *point.gamma, opts),
                                     *point.gamma);
          }
          row.solver_converged = estimate.solver->converged;
          break;
        }
      }
      row.agreement = config.model == Model::Sbm
                          ? agreement_sbm(estimate.labels, truth)
                          : agreement_pds(estimate.labels, truth);
      row.exact = row.agreement == 1.0;
    } catch (const std::exception& e) {
      row.errored = true;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

SweepResult run_sweep(const SweepConfig& config, int workers) {
  config.validate();
  if (workers < 1) workers = 1;
  const std::vector<GridPoint> grid = expand_grid(config);
  const std::size_t tasks = grid.size() * config.trials_per_point;

  std::vector<std::vector<TrialResult>> slots(tasks);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks) return;
      const std::size_t g = t / config.trials_per_point;
      const int trial = static_cast<int>(t % config.trials_per_point);
      slots[t] = run_trial(config, grid[g], g, trial);
    }
  };
  if (workers == 1 || tasks <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    const int count = std::min<std::size_t>(workers, tasks);
    pool.reserve(count);
    for (int w = 0; w < count; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  SweepResult result;
  result.config = config;
  for (auto& slot : slots)
    for (auto& row : slot) result.rows.push_back(std::move(row));
  result.summary = summarize(result.rows);
  return result;
}

std::pair<double, double> wilson_interval(int successes, int trials) {
  if (trials <= 0) throw InvalidArgs("wilson_interval needs trials >= 1");
  const double z = 1.96;
  const double nn = trials;
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<SummaryCell> summarize(const std::vector<TrialResult>& rows) {
  if (rows.empty()) throw InvalidArgs("summarize needs at least one row");
  std::vector<SummaryCell> cells;
  auto find_cell = [&cells](const TrialResult& row) -> SummaryCell& {
    for (auto& c : cells) {
      if (c.estimator == row.estimator && c.grid_point.n == row.grid_point.n &&
          c.grid_point.snr == row.grid_point.snr)
        return c;
    }
    cells.push_back(SummaryCell{row.grid_point, row.estimator, 0, 0, 0, 0, 0});
    return cells.back();
  };
  for (const auto& row : rows) {
    if (row.errored) continue;
    SummaryCell& cell = find_cell(row);
    cell.trials += 1;
    cell.exact_count += row.exact ? 1 : 0;
  }
  for (auto& cell : cells) {
    if (cell.trials == 0) continue;
    cell.p_hat = static_cast<double>(cell.exact_count) / cell.trials;
    const auto [lo, hi] = wilson_interval(cell.exact_count, cell.trials);
    cell.ci_low = lo;
    cell.ci_high = hi;
  }
  return cells;
}

namespace {

std::string model_name(Model m) { return m == Model::Sbm ? "sbm" : "pds"; }

ordered_json config_json(const SweepConfig& config) {
  ordered_json j;
  j["model"] = model_name(config.model);
  j["n_values"] = config.n_values;
  j["snr_grid"] = config.snr_grid;
  if (config.gamma)
    j["gamma"] = *config.gamma;
  else
    j["gamma"] = nullptr;
  j["trials_per_point"] = config.trials_per_point;
  std::vector<std::string> ests;
  for (EstimatorKind e : config.estimators) ests.push_back(estimator_name(e));
  j["estimators"] = ests;
  j["run_certificate"] = config.run_certificate;
  j["run_diagnostics"] = config.run_diagnostics;
  j["master_seed"] = config.master_seed;
  j["permute_labels"] = config.permute_labels;
  return j;
}

std::string opt_flag(const std::optional<bool>& v) {
  if (!v) return "";
  return *v ? "1" : "0";
}

}  // namespace

void write_rows_csv(std::ostream& os, const SweepResult& result) {
  os << "# config: " << config_json(result.config).dump() << "\n";
  os << "model,n,snr,gamma,estimator,trial,seed,exact,agreement,cert_holds,"
        "bad_nonempty,converged,wall_ms\n";
  const std::string model = model_name(result.config.model);
  for (const TrialResult& row : result.rows) {
    os << model << ',' << row.grid_point.n << ','
       << format_double(row.grid_point.snr) << ',';
    if (row.grid_point.gamma) os << format_double(*row.grid_point.gamma);
    os << ',' << estimator_name(row.estimator) << ',' << row.trial_index << ','
       << row.seed << ',';
    if (row.errored) {
      os << ",,";  // exact, agreement unavailable
    } else {
      os << (row.exact ? 1 : 0) << ',' << format_double(row.agreement) << ',';
    }
    os << opt_flag(row.certificate_holds) << ',' << opt_flag(row.bad_set_nonempty)
       << ',' << opt_flag(row.solver_converged) << ','
       << format_double(row.wall_time_ms) << "\n";
  }
}

void write_summary_json(std::ostream& os, const SweepResult& result) {
  ordered_json j;
  j["config"] = config_json(result.config);
  ordered_json cells = ordered_json::array();
  for (const SummaryCell& cell : result.summary) {
    ordered_json c;
    c["n"] = cell.grid_point.n;
    c["snr"] = cell.grid_point.snr;
    if (cell.grid_point.gamma)
      c["gamma"] = *cell.grid_point.gamma;
    else
      c["gamma"] = nullptr;
    c["estimator"] = estimator_name(cell.estimator);
    c["trials"] = cell.trials;
    c["exact_count"] = cell.exact_count;
    c["p_hat"] = cell.p_hat;
    c["ci_low"] = cell.ci_low;
    c["ci_high"] = cell.ci_high;
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  os << j.dump(2) << "\n";
}

std::string sweep_config_to_json(const SweepConfig& config) {
  return config_json(config).dump(2);
}

SweepConfig sweep_config_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgs(std::string("config parse error: ") + e.what());
  }
  SweepConfig config;
  try {
    const std::string model = j.at("model").get<std::string>();
    if (model == "sbm")
      config.model = Model::Sbm;
    else if (model == "pds")
      config.model = Model::Pds;
    else
      throw InvalidArgs("model must be \"sbm\" or \"pds\"");
    config.n_values = j.at("n_values").get<std::vector<int>>();
    config.snr_grid = j.at("snr_grid").get<std::vector<double>>();
    if (j.contains("gamma") && !j["gamma"].is_null())
      config.gamma = j["gamma"].get<double>();
    config.trials_per_point = j.at("trials_per_point").get<int>();
    for (const auto& e : j.at("estimators"))
      config.estimators.push_back(estimator_from_name(e.get<std::string>()));
    config.run_certificate = j.value("run_certificate", false);
    config.run_diagnostics = j.value("run_diagnostics", false);
    config.master_seed = j.value("master_seed", std::uint64_t{0});
    config.permute_labels = j.value("permute_labels", false);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgs(std::string("config field error: ") + e.what());
  }
  return config;
}

}  // namespace rlab
