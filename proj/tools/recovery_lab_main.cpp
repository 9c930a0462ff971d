// recovery-lab: sampling, estimation, certification, diagnostics and Monte
// Carlo sweeps for Gaussian weighted community recovery models.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "rlab/certificates.hpp"
#include "rlab/diagnostics.hpp"
#include "rlab/estimators.hpp"
#include "rlab/experiments.hpp"
#include "rlab/io.hpp"
#include "rlab/model.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;
using namespace rlab;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

Model parse_model(const std::string& s) {
  if (s == "sbm") return Model::Sbm;
  if (s == "pds") return Model::Pds;
  throw InvalidArgs("--model must be sbm or pds");
}

std::string model_string(Model m) { return m == Model::Sbm ? "sbm" : "pds"; }

LabelKind kind_for(Model m) {
  return m == Model::Sbm ? LabelKind::SbmSigma : LabelKind::PdsZeta;
}

struct SampleArgs {
  std::string model;
  int n = 0;
  double alpha = 0, beta = 0, tau = 0;
  std::optional<double> gamma;
  std::uint64_t seed = 0;
  std::string out;
  std::string diagonal = "zero";
};

int cmd_sample(const SampleArgs& args) {
  const Model model = parse_model(args.model);
  if (model == Model::Pds && !args.gamma)
    throw InvalidParams("--model pds requires --gamma");
  const DiagonalMode mode = args.diagonal == "sampled"
                                ? DiagonalMode::SampledInside
                                : DiagonalMode::Zero;
  const ModelParams params =
      ModelParams::make(args.n, args.alpha, args.beta, args.tau, args.gamma, mode);
  const Sample sample = model == Model::Sbm ? sample_gwsbm(params, args.seed)
                                            : sample_gwpdsm(params, args.seed);
  save_graph(args.out, sample.graph);
  save_labels(args.out + ".labels", sample.labels);

  ordered_json echo;
  echo["config"] = ordered_json::parse(params_to_json(params, args.seed));
  echo["config"]["model"] = args.model;
  echo["config"]["out"] = args.out;
  std::cout << echo.dump(2) << "\n";
  return 0;
}

struct EstimateArgs {
  std::string in, estimator, model, truth;
  std::optional<double> alpha, beta, tau, gamma;
  bool plugin_mean = false;
  SolverOptions opts;
};

int cmd_estimate(const EstimateArgs& args) {
  const Model model = parse_model(args.model);
  const WeightedGraph graph = load_graph(args.in);

  ordered_json config;
  config["in"] = args.in;
  config["estimator"] = args.estimator;
  config["model"] = args.model;
  if (args.alpha) config["alpha"] = *args.alpha;
  if (args.beta) config["beta"] = *args.beta;
  if (args.tau) config["tau"] = *args.tau;
  if (args.gamma) config["gamma"] = *args.gamma;
  if (!args.truth.empty()) config["truth"] = args.truth;
  if (args.plugin_mean) config["plugin_mean"] = true;

  EstimateResult estimate;
  if (args.estimator == "mle") {
    if (model == Model::Sbm) {
      estimate = mle_sbm_exhaustive(graph);
    } else {
      if (!args.gamma) throw InvalidArgs("PDS MLE requires --gamma");
      estimate = mle_pds_exhaustive(graph, *args.gamma);
    }
  } else if (args.estimator == "spectral") {
    if (model != Model::Sbm)
      throw InvalidArgs("the spectral estimator applies to --model sbm");
    double alpha = 1.0, beta = 0.0;
    if (!args.plugin_mean) {
      if (!args.alpha || !args.beta)
        throw InvalidArgs("spectral needs --alpha and --beta (or --plugin-mean)");
      alpha = *args.alpha;
      beta = *args.beta;
    }
    const ModelParams params =
        ModelParams::make(graph.n(), alpha, beta, args.tau.value_or(1.0));
    estimate = spectral_sbm(graph, params, args.plugin_mean);
  } else if (args.estimator == "sdp") {
    config["rho"] = args.opts.rho;
    config["max_iters"] = args.opts.max_iters;
    if (model == Model::Sbm) {
      estimate = round_sdp_sbm(sdp_sbm(graph, args.opts));
    } else {
      if (!args.gamma) throw InvalidArgs("PDS SDP requires --gamma");
      estimate = round_sdp_pds(sdp_pds(graph, *args.gamma, args.opts), *args.gamma);
    }
  } else {
    throw InvalidArgs("--estimator must be mle, spectral or sdp");
  }

  estimate.objective = model == Model::Sbm
                           ? objective_sbm(graph, estimate.labels)
                           : objective_pds(graph, estimate.labels);

  ordered_json out;
  out["config"] = std::move(config);
  out["estimator"] = args.estimator;
  out["labels"] = estimate.labels.values;
  out["objective"] = estimate.objective;
  if (!args.truth.empty()) {
    const LabelVector truth = load_labels(args.truth, kind_for(model));
    out["agreement"] = model == Model::Sbm
                           ? agreement_sbm(estimate.labels, truth)
                           : agreement_pds(estimate.labels, truth);
  }
  if (args.estimator == "mle") out["tie"] = estimate.tie;
  if (estimate.solver) {
    out["solver"] = {{"iterations", estimate.solver->iterations},
                     {"primal_residual", estimate.solver->primal_residual},
                     {"dual_residual", estimate.solver->dual_residual},
                     {"converged", estimate.solver->converged}};
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

struct CertifyArgs {
  std::string in, truth, model;
  double alpha = 0, beta = 0, tau = 0;
  std::optional<double> gamma;
  double tol_cert = -1.0;
};

int cmd_certify(const CertifyArgs& args) {
  const Model model = parse_model(args.model);
  const WeightedGraph graph = load_graph(args.in);
  const LabelVector truth = load_labels(args.truth, kind_for(model));
  const ModelParams params = ModelParams::make(graph.n(), args.alpha, args.beta,
                                               args.tau, args.gamma,
                                               graph.diagonal_mode);

  ordered_json out;
  out["config"] = ordered_json::parse(params_to_json(params, 0));
  out["config"].erase("seed");
  out["config"]["in"] = args.in;
  out["config"]["truth"] = args.truth;
  out["config"]["model"] = args.model;

  std::string report;
  if (model == Model::Sbm) {
    report = certificate_report_json(
        certificate_sbm(graph, truth, params, args.tol_cert));
  } else {
    if (!args.gamma) throw InvalidArgs("--model pds requires --gamma");
    report = certificate_report_json(
        certificate_pds(graph, truth, params, args.tol_cert));
  }
  out.update(ordered_json::parse(report));
  std::cout << out.dump(2) << "\n";
  return 0;
}

struct DiagnoseArgs {
  std::string in, truth, model;
  std::optional<double> cn;
  double tau = 1.0;
};

int cmd_diagnose(const DiagnoseArgs& args) {
  const Model model = parse_model(args.model);
  const WeightedGraph graph = load_graph(args.in);
  const LabelVector truth = load_labels(args.truth, kind_for(model));

  ordered_json out;
  out["config"] = {{"in", args.in},
                   {"truth", args.truth},
                   {"model", args.model},
                   {"tau", args.tau}};

  if (model == Model::Sbm) {
    const double cn = args.cn ? *args.cn : default_c_n(args.tau, graph.n());
    out["config"]["c_n"] = cn;
    out["bad_pairs"] =
        ordered_json::parse(bad_set_report_json(bad_pairs_sbm(graph, truth), model));
    const auto [plus, minus] = bad_vertices_sbm(graph, truth, cn);
    out["bad_vertices_plus"] = ordered_json::parse(bad_set_report_json(plus, model));
    out["bad_vertices_minus"] = ordered_json::parse(bad_set_report_json(minus, model));
  } else {
    out["bad_pairs"] =
        ordered_json::parse(bad_set_report_json(bad_pairs_pds(graph, truth), model));
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

struct SweepArgs {
  std::string config_path, out_dir;
  int workers = 0;  // 0: env RECOVERY_LAB_WORKERS, else hardware
};

int resolve_workers(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("RECOVERY_LAB_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

int cmd_sweep(const SweepArgs& args) {
  std::ifstream is(args.config_path);
  if (!is) throw InvalidArgs("cannot open config: " + args.config_path);
  std::stringstream buf;
  buf << is.rdbuf();
  const SweepConfig config = sweep_config_from_json(buf.str());
  const int workers = resolve_workers(args.workers);

  const SweepResult result = run_sweep(config, workers);

  std::filesystem::create_directories(args.out_dir);
  {
    std::ofstream rows(args.out_dir + "/rows.csv", std::ios::binary);
    if (!rows) throw InvalidArgs("cannot write rows.csv in " + args.out_dir);
    write_rows_csv(rows, result);
  }
  {
    std::ofstream summary(args.out_dir + "/summary.json", std::ios::binary);
    if (!summary) throw InvalidArgs("cannot write summary.json in " + args.out_dir);
    write_summary_json(summary, result);
  }

  std::printf("# config: %s\n", sweep_config_to_json(config).c_str());
  std::printf("%-6s %-6s %-8s %-9s %-7s %-6s %-7s %-16s\n", "model", "n", "snr",
              "estim", "trials", "exact", "p_hat", "wilson95");
  for (const SummaryCell& cell : result.summary) {
    std::printf("%-6s %-6d %-8g %-9s %-7d %-6d %-7.3f [%.3f, %.3f]\n",
                model_string(result.config.model).c_str(), cell.grid_point.n,
                cell.grid_point.snr, estimator_name(cell.estimator).c_str(),
                cell.trials, cell.exact_count, cell.p_hat, cell.ci_low,
                cell.ci_high);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  // Single-threaded BLAS keeps results identical no matter how trials are
  // scheduled; parallelism lives at the trial level.
  setenv("OPENBLAS_NUM_THREADS", "1", 0);
  setenv("OMP_NUM_THREADS", "1", 0);

  CLI::App app{"Gaussian weighted community recovery lab"};
  app.require_subcommand(1);

  SampleArgs sample_args;
  CLI::App* sample = app.add_subcommand("sample", "sample a model instance");
  sample->add_option("--model", sample_args.model)->required();
  sample->add_option("--n", sample_args.n)->required();
  sample->add_option("--alpha", sample_args.alpha)->required();
  sample->add_option("--beta", sample_args.beta)->required();
  sample->add_option("--tau", sample_args.tau)->required();
  sample->add_option("--gamma", sample_args.gamma);
  sample->add_option("--seed", sample_args.seed)->required();
  sample->add_option("--out", sample_args.out)->required();
  sample->add_option("--diagonal", sample_args.diagonal)
      ->check(CLI::IsMember({"zero", "sampled"}));

  EstimateArgs estimate_args;
  CLI::App* estimate = app.add_subcommand("estimate", "run an estimator");
  estimate->add_option("--in", estimate_args.in)->required();
  estimate->add_option("--estimator", estimate_args.estimator)->required();
  estimate->add_option("--model", estimate_args.model)->required();
  estimate->add_option("--alpha", estimate_args.alpha);
  estimate->add_option("--beta", estimate_args.beta);
  estimate->add_option("--tau", estimate_args.tau);
  estimate->add_option("--gamma", estimate_args.gamma);
  estimate->add_option("--truth", estimate_args.truth);
  estimate->add_flag("--plugin-mean", estimate_args.plugin_mean);
  estimate->add_option("--rho", estimate_args.opts.rho);
  estimate->add_option("--max-iters", estimate_args.opts.max_iters);
  double primal_tol = -1, dual_tol = -1;
  estimate->add_option("--primal-tol", primal_tol);
  estimate->add_option("--dual-tol", dual_tol);

  CertifyArgs certify_args;
  CLI::App* certify = app.add_subcommand("certify", "evaluate the dual certificate");
  certify->add_option("--in", certify_args.in)->required();
  certify->add_option("--truth", certify_args.truth)->required();
  certify->add_option("--model", certify_args.model)->required();
  certify->add_option("--alpha", certify_args.alpha)->required();
  certify->add_option("--beta", certify_args.beta)->required();
  certify->add_option("--tau", certify_args.tau)->required();
  certify->add_option("--gamma", certify_args.gamma);
  certify->add_option("--tol-cert", certify_args.tol_cert);

  DiagnoseArgs diagnose_args;
  CLI::App* diagnose = app.add_subcommand("diagnose", "bad-pair and bad-vertex scans");
  diagnose->add_option("--in", diagnose_args.in)->required();
  diagnose->add_option("--truth", diagnose_args.truth)->required();
  diagnose->add_option("--model", diagnose_args.model)->required();
  diagnose->add_option("--cn", diagnose_args.cn);
  diagnose->add_option("--tau", diagnose_args.tau);

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "seeded Monte Carlo sweep");
  sweep->add_option("--config", sweep_args.config_path)->required();
  sweep->add_option("--out-dir", sweep_args.out_dir)->required();
  sweep->add_option("--workers", sweep_args.workers);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (sample->parsed()) return cmd_sample(sample_args);
    if (estimate->parsed()) {
      if (primal_tol > 0) estimate_args.opts.primal_tol = primal_tol;
      if (dual_tol > 0) estimate_args.opts.dual_tol = dual_tol;
      return cmd_estimate(estimate_args);
    }
    if (certify->parsed()) return cmd_certify(certify_args);
    if (diagnose->parsed()) return cmd_diagnose(diagnose_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
