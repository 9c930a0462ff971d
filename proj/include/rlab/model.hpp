#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rlab/common.hpp"

namespace rlab {

enum class DiagonalMode { Zero, SampledInside };
enum class LabelKind { SbmSigma, PdsZeta };

// Model parameters under the critical scaling mu1 = alpha*sqrt(log n / n),
// mu2 = beta*sqrt(log n / n). Covers both the two-community model and, when
// gamma is set, the planted dense subgraph model.
struct ModelParams {
  int n = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double tau = 1.0;
  std::optional<double> gamma;
  DiagonalMode diagonal_mode = DiagonalMode::Zero;

  // Throws InvalidParams unless n >= 2, alpha > beta, tau > 0 and, when
  // present, gamma in (0, 1] with gamma*n integral.
  static ModelParams make(int n, double alpha, double beta, double tau,
                          std::optional<double> gamma = std::nullopt,
                          DiagonalMode diagonal_mode = DiagonalMode::Zero);

  // Number of planted vertices gamma*n; requires gamma.
  int planted_size() const;
};

// (alpha - beta)^2 / (8 tau^2); the raw formula, no parameter validation.
double snr_value(double alpha, double beta, double tau);
double snr(const ModelParams& params);

// sqrt(log n / n), the critical scaling factor.
double critical_scale(int n);

// (mu1, mu2) under the critical scaling.
std::pair<double, double> scaled_means(const ModelParams& params);

// Community labels: entries are +1/-1 for SbmSigma, 0/1 for PdsZeta.
struct LabelVector {
  LabelKind kind = LabelKind::SbmSigma;
  std::vector<int> values;

  static LabelVector sbm(std::vector<int> values);
  static LabelVector pds(std::vector<int> values);

  int n() const { return static_cast<int>(values.size()); }
  int sum() const;
  bool is_balanced() const;  // SbmSigma only: <sigma, 1> == 0
  int ones_count() const;    // PdsZeta only

  LabelVector flipped() const;                             // SbmSigma sign flip
  LabelVector permuted(const std::vector<int>& perm) const;  // new[perm[i]] = old[i]

  bool operator==(const LabelVector&) const = default;
};

// Observed sample: dense symmetric weight matrix. Construction enforces exact
// symmetry and a zero diagonal when the mode says so.
struct WeightedGraph {
  Eigen::MatrixXd entries;
  DiagonalMode diagonal_mode = DiagonalMode::Zero;

  WeightedGraph() = default;
  WeightedGraph(Eigen::MatrixXd m, DiagonalMode mode);

  int n() const { return static_cast<int>(entries.rows()); }

  WeightedGraph permuted(const std::vector<int>& perm) const;
};

struct Sample {
  LabelVector labels;
  WeightedGraph graph;
};

// Samples the two-community model with the canonical planted labeling
// (+1 on the first n/2 vertices). Same (params, seed) gives bit-identical
// output; every entry is addressed by a fixed counter so the layout does not
// depend on evaluation order.
Sample sample_gwsbm(const ModelParams& params, std::uint64_t seed);

// Samples the planted dense subgraph model with the canonical planted set
// {0, ..., gamma*n - 1}; the diagonal is always zero.
Sample sample_gwpdsm(const ModelParams& params, std::uint64_t seed);

// Agreement ratio, maximized over the global sign flip.
double agreement_sbm(const LabelVector& a, const LabelVector& b);

// Plain fraction of matching coordinates (no flip for 0/1 labels).
double agreement_pds(const LabelVector& a, const LabelVector& b);

// Entrywise expectation of the sampled weight matrix given the labels:
// mu1 on within-community (or within-planted-set) pairs, mu2 elsewhere,
// diagonal 0 or mu1 per the params' diagonal mode.
Eigen::MatrixXd expected_adjacency(const ModelParams& params,
                                   const LabelVector& labels);

}  // namespace rlab
