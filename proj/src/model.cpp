#include "rlab/model.hpp"

#include <cmath>
#include <cstdlib>

#include "rlab/rng.hpp"

namespace rlab {

namespace {

bool is_integral_count(double x) {
  return std::abs(x - std::round(x)) < 1e-9;
}

}  // namespace

ModelParams ModelParams::make(int n, double alpha, double beta, double tau,
                              std::optional<double> gamma,
                              DiagonalMode diagonal_mode) {
  if (n < 2) throw InvalidParams("n must be at least 2");
  if (!(alpha > beta)) throw InvalidParams("assortative case requires alpha > beta");
  if (!(tau > 0.0)) throw InvalidParams("tau must be positive");
  if (gamma) {
    if (!(*gamma > 0.0) || !(*gamma <= 1.0))
      throw InvalidParams("gamma must lie in (0, 1]");
    if (!is_integral_count(*gamma * n))
      throw InvalidParams("gamma * n must be an integer");
  }
  return ModelParams{n, alpha, beta, tau, gamma, diagonal_mode};
}

int ModelParams::planted_size() const {
  if (!gamma) throw InvalidParams("gamma required for the planted model");
  return static_cast<int>(std::llround(*gamma * n));
}

double snr_value(double alpha, double beta, double tau) {
  const double d = alpha - beta;
  return d * d / (8.0 * tau * tau);
}

double snr(const ModelParams& params) {
  return snr_value(params.alpha, params.beta, params.tau);
}

double critical_scale(int n) {
  return std::sqrt(std::log(static_cast<double>(n)) / n);
}

std::pair<double, double> scaled_means(const ModelParams& params) {
  const double scale = critical_scale(params.n);
  return {params.alpha * scale, params.beta * scale};
}

LabelVector LabelVector::sbm(std::vector<int> values) {
  for (int v : values)
    if (v != 1 && v != -1) throw InvalidArgs("sigma entries must be +1 or -1");
  return LabelVector{LabelKind::SbmSigma, std::move(values)};
}

LabelVector LabelVector::pds(std::vector<int> values) {
  for (int v : values)
    if (v != 0 && v != 1) throw InvalidArgs("zeta entries must be 0 or 1");
  return LabelVector{LabelKind::PdsZeta, std::move(values)};
}

int LabelVector::sum() const {
  int s = 0;
  for (int v : values) s += v;
  return s;
}

bool LabelVector::is_balanced() const { return sum() == 0; }

int LabelVector::ones_count() const {
  int c = 0;
  for (int v : values) c += (v == 1);
  return c;
}

LabelVector LabelVector::flipped() const {
  if (kind != LabelKind::SbmSigma)
    throw InvalidArgs("global flip applies to sigma labels only");
  LabelVector out = *this;
  for (int& v : out.values) v = -v;
  return out;
}

LabelVector LabelVector::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n())
    throw InvalidArgs("permutation size mismatch");
  LabelVector out = *this;
  for (int i = 0; i < n(); ++i) out.values[perm[i]] = values[i];
  return out;
}

WeightedGraph::WeightedGraph(Eigen::MatrixXd m, DiagonalMode mode)
    : entries(std::move(m)), diagonal_mode(mode) {
  if (entries.rows() != entries.cols())
    throw InvalidArgs("weight matrix must be square");
  const int nn = static_cast<int>(entries.rows());
  for (int i = 0; i < nn; ++i)
    for (int j = i + 1; j < nn; ++j)
      if (entries(i, j) != entries(j, i))
        throw InvalidArgs("weight matrix must be exactly symmetric");
  if (diagonal_mode == DiagonalMode::Zero)
    for (int i = 0; i < nn; ++i)
      if (entries(i, i) != 0.0)
        throw InvalidArgs("diagonal must be zero under the Zero convention");
}

WeightedGraph WeightedGraph::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n())
    throw InvalidArgs("permutation size mismatch");
  Eigen::MatrixXd out(n(), n());
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j) out(perm[i], perm[j]) = entries(i, j);
  return WeightedGraph(std::move(out), diagonal_mode);
}

namespace {

// Linear index of the unordered pair {i < j} in row-major upper-triangle
// order; fixes the counter each entry consumes.
std::uint64_t pair_index(int n, int i, int j) {
  const std::uint64_t ui = static_cast<std::uint64_t>(i);
  return ui * (2 * static_cast<std::uint64_t>(n) - ui - 1) / 2 +
         static_cast<std::uint64_t>(j - i - 1);
}

Eigen::MatrixXd sample_entries(int n, double mu1, double mu2, double tau,
                               const std::vector<int>& same_block,
                               DiagonalMode mode, std::uint64_t seed) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double mean = same_block[i] == same_block[j] ? mu1 : mu2;
      const double v = mean + tau * counter_gauss(seed, pair_index(n, i, j));
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  if (mode == DiagonalMode::SampledInside) {
    const std::uint64_t base = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    for (int i = 0; i < n; ++i)
      a(i, i) = mu1 + tau * counter_gauss(seed, base + static_cast<std::uint64_t>(i));
  }
  return a;
}

}  // namespace

Sample sample_gwsbm(const ModelParams& params, std::uint64_t seed) {
  if (params.n % 2 != 0)
    throw InvalidParams("two-community sampling requires even n");
  const auto [mu1, mu2] = scaled_means(params);
  std::vector<int> sigma(params.n);
  for (int i = 0; i < params.n; ++i) sigma[i] = i < params.n / 2 ? 1 : -1;
  Eigen::MatrixXd a = sample_entries(params.n, mu1, mu2, params.tau, sigma,
                                     params.diagonal_mode, seed);
  return Sample{LabelVector::sbm(std::move(sigma)),
                WeightedGraph(std::move(a), params.diagonal_mode)};
}

Sample sample_gwpdsm(const ModelParams& params, std::uint64_t seed) {
  const int k = params.planted_size();
  const auto [mu1, mu2] = scaled_means(params);
  std::vector<int> zeta(params.n);
  for (int i = 0; i < params.n; ++i) zeta[i] = i < k ? 1 : 0;
  // "same block" means both endpoints planted, so non-planted vertices must
  // all look distinct from each other as well.
  std::vector<int> block(params.n);
  for (int i = 0; i < params.n; ++i) block[i] = zeta[i] ? 0 : 1 + i;
  Eigen::MatrixXd a = sample_entries(params.n, mu1, mu2, params.tau, block,
                                     DiagonalMode::Zero, seed);
  return Sample{LabelVector::pds(std::move(zeta)),
                WeightedGraph(std::move(a), DiagonalMode::Zero)};
}

double agreement_sbm(const LabelVector& a, const LabelVector& b) {
  if (a.kind != LabelKind::SbmSigma || b.kind != LabelKind::SbmSigma)
    throw InvalidArgs("agreement_sbm expects sigma labels");
  if (a.n() != b.n()) throw InvalidArgs("label length mismatch");
  int match = 0;
  for (int i = 0; i < a.n(); ++i) match += (a.values[i] == b.values[i]);
  const int best = std::max(match, a.n() - match);
  return static_cast<double>(best) / a.n();
}

double agreement_pds(const LabelVector& a, const LabelVector& b) {
  if (a.kind != LabelKind::PdsZeta || b.kind != LabelKind::PdsZeta)
    throw InvalidArgs("agreement_pds expects zeta labels");
  if (a.n() != b.n()) throw InvalidArgs("label length mismatch");
  if (a.ones_count() != b.ones_count())
    throw InvalidArgs("zeta labels must have the same planted size");
  int match = 0;
  for (int i = 0; i < a.n(); ++i) match += (a.values[i] == b.values[i]);
  return static_cast<double>(match) / a.n();
}

Eigen::MatrixXd expected_adjacency(const ModelParams& params,
                                   const LabelVector& labels) {
  if (labels.n() != params.n) throw InvalidArgs("label length mismatch");
  const auto [mu1, mu2] = scaled_means(params);
  Eigen::MatrixXd e(params.n, params.n);
  const bool pds = labels.kind == LabelKind::PdsZeta;
  for (int i = 0; i < params.n; ++i) {
    for (int j = 0; j < params.n; ++j) {
      const bool within = pds ? (labels.values[i] == 1 && labels.values[j] == 1)
                              : (labels.values[i] == labels.values[j]);
      e(i, j) = within ? mu1 : mu2;
    }
    e(i, i) = params.diagonal_mode == DiagonalMode::SampledInside && !pds ? mu1 : 0.0;
  }
  return e;
}

}  // namespace rlab
