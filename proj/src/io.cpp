#include "rlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rlab {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char full[32];
  std::snprintf(full, sizeof(full), "%.17g", v);
  for (int prec = 1; prec <= 16; ++prec) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) return buf;
  }
  return full;
}

void write_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  os << n << "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) os << ' ';
      os << format_double(m(i, j));
    }
    os << "\n";
  }
}

Eigen::MatrixXd read_matrix(std::istream& is) {
  int n = 0;
  if (!(is >> n) || n < 1) throw InvalidArgs("matrix file: bad dimension line");
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(is >> m(i, j)))
        throw InvalidArgs("matrix file: truncated or malformed row");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (m(i, j) != m(j, i))
        throw InvalidArgs("matrix file: not exactly symmetric");
  return m;
}

void save_graph(const std::string& path, const WeightedGraph& graph) {
  std::ofstream os(path);
  if (!os) throw InvalidArgs("cannot open for writing: " + path);
  write_matrix(os, graph.entries);
}

WeightedGraph load_graph(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidArgs("cannot open: " + path);
  Eigen::MatrixXd m = read_matrix(is);
  const bool zero_diag = (m.diagonal().array() == 0.0).all();
  return WeightedGraph(std::move(m), zero_diag ? DiagonalMode::Zero
                                               : DiagonalMode::SampledInside);
}

void write_labels(std::ostream& os, const LabelVector& labels) {
  for (int v : labels.values) os << v << "\n";
}

LabelVector read_labels(std::istream& is, LabelKind kind) {
  std::vector<int> values;
  int v = 0;
  while (is >> v) values.push_back(v);
  if (values.empty()) throw InvalidArgs("labels file: no entries");
  return kind == LabelKind::SbmSigma ? LabelVector::sbm(std::move(values))
                                     : LabelVector::pds(std::move(values));
}

void save_labels(const std::string& path, const LabelVector& labels) {
  std::ofstream os(path);
  if (!os) throw InvalidArgs("cannot open for writing: " + path);
  write_labels(os, labels);
}

LabelVector load_labels(const std::string& path, LabelKind kind) {
  std::ifstream is(path);
  if (!is) throw InvalidArgs("cannot open: " + path);
  return read_labels(is, kind);
}

std::string params_to_json(const ModelParams& params, std::uint64_t seed) {
  ordered_json j;
  j["n"] = params.n;
  j["alpha"] = params.alpha;
  j["beta"] = params.beta;
  j["tau"] = params.tau;
  if (params.gamma)
    j["gamma"] = *params.gamma;
  else
    j["gamma"] = nullptr;
  j["diagonal_mode"] =
      params.diagonal_mode == DiagonalMode::Zero ? "zero" : "sampled_inside";
  j["seed"] = seed;
  return j.dump();
}

std::pair<ModelParams, std::uint64_t> params_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgs(std::string("params parse error: ") + e.what());
  }
  try {
    std::optional<double> gamma;
    if (j.contains("gamma") && !j["gamma"].is_null())
      gamma = j["gamma"].get<double>();
    DiagonalMode mode = DiagonalMode::Zero;
    if (j.contains("diagonal_mode")) {
      const std::string s = j["diagonal_mode"].get<std::string>();
      if (s == "sampled_inside")
        mode = DiagonalMode::SampledInside;
      else if (s != "zero")
        throw InvalidArgs("diagonal_mode must be \"zero\" or \"sampled_inside\"");
    }
    ModelParams params = ModelParams::make(
        j.at("n").get<int>(), j.at("alpha").get<double>(),
        j.at("beta").get<double>(), j.at("tau").get<double>(), gamma, mode);
    return {params, j.value("seed", std::uint64_t{0})};
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgs(std::string("params field error: ") + e.what());
  }
}

std::string certificate_report_json(const SbmCertificate& cert) {
  ordered_json j;
  j["model"] = "sbm";
  j["holds"] = cert.holds;
  j["lambda2"] = cert.lambda2;
  j["min_d"] = cert.min_d;
  j["min_b"] = nullptr;
  j["eta_star"] = nullptr;
  j["lambda_star"] = cert.lambda_star;
  j["min_d_above_4tau_sqrt_n"] = cert.min_d_sufficient;
  j["tol_cert"] = cert.tol_cert;
  return j.dump();
}

std::string certificate_report_json(const PdsCertificate& cert) {
  ordered_json j;
  j["model"] = "pds";
  j["holds"] = cert.holds;
  j["lambda2"] = cert.lambda2;
  j["min_d"] = cert.min_d;
  j["min_b"] = cert.min_b;
  j["eta_star"] = cert.eta_star;
  j["lambda_star"] = cert.lambda_star;
  j["nonneg_d"] = cert.nonneg_d;
  j["nonneg_b"] = cert.nonneg_b;
  j["tol_cert"] = cert.tol_cert;
  return j.dump();
}

std::string bad_set_report_json(const BadSetReport& report, Model model) {
  ordered_json j;
  j["model"] = model == Model::Sbm ? "sbm" : "pds";
  j["count"] = report.count;
  j["nonempty"] = report.nonempty;
  if (report.c_n)
    j["c_n"] = *report.c_n;
  else
    j["c_n"] = nullptr;
  ordered_json pairs = ordered_json::array();
  const std::size_t cap = 1000;
  for (std::size_t k = 0; k < report.pairs.size() && k < cap; ++k)
    pairs.push_back({report.pairs[k].first, report.pairs[k].second});
  j["pairs"] = std::move(pairs);
  j["truncated"] = report.pairs.size() > cap;
  return j.dump();
}

}  // namespace rlab
