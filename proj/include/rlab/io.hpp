#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

#include "rlab/certificates.hpp"
#include "rlab/diagnostics.hpp"
#include "rlab/model.hpp"

namespace rlab {

// Shortest decimal string that parses back to exactly v.
std::string format_double(double v);

// Matrix file: line 1 holds n, then n rows of n space-separated decimals.
// Loading requires exact symmetry; the diagonal mode is inferred from the
// diagonal being all zero or not.
void write_matrix(std::ostream& os, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(std::istream& is);
void save_graph(const std::string& path, const WeightedGraph& graph);
WeightedGraph load_graph(const std::string& path);

// Labels file: one label per line (+1/-1 or 0/1).
void write_labels(std::ostream& os, const LabelVector& labels);
LabelVector read_labels(std::istream& is, LabelKind kind);
void save_labels(const std::string& path, const LabelVector& labels);
LabelVector load_labels(const std::string& path, LabelKind kind);

// Params JSON object with keys n, alpha, beta, tau, gamma, diagonal_mode, seed.
std::string params_to_json(const ModelParams& params, std::uint64_t seed);
std::pair<ModelParams, std::uint64_t> params_from_json(const std::string& text);

std::string certificate_report_json(const SbmCertificate& cert);
std::string certificate_report_json(const PdsCertificate& cert);

// {model, count, nonempty, c_n, pairs, truncated}; pairs capped at 1000.
std::string bad_set_report_json(const BadSetReport& report, Model model);

}  // namespace rlab
