#include "rlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rlab {

namespace {

void require_sigma(const WeightedGraph& a, const LabelVector& sigma) {
  if (sigma.kind != LabelKind::SbmSigma)
    throw InvalidArgs("expected sigma labels");
  if (sigma.n() != a.n()) throw InvalidArgs("label/graph size mismatch");
  if (!sigma.is_balanced()) throw InvalidArgs("expected a balanced labeling");
}

void require_zeta(const WeightedGraph& a, const LabelVector& zeta) {
  if (zeta.kind != LabelKind::PdsZeta) throw InvalidArgs("expected zeta labels");
  if (zeta.n() != a.n()) throw InvalidArgs("label/graph size mismatch");
}

// Own- and cross-community degree of every vertex, diagonal excluded.
void community_degrees(const WeightedGraph& a, const LabelVector& sigma,
                       std::vector<double>& own, std::vector<double>& cross) {
  const int n = a.n();
  own.assign(n, 0.0);
  cross.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (sigma.values[i] == sigma.values[j])
        own[i] += a.entries(i, j);
      else
        cross[i] += a.entries(i, j);
    }
  }
}

BadSetReport make_report(std::vector<std::pair<int, int>> pairs,
                         std::optional<double> c_n = std::nullopt) {
  BadSetReport r;
  r.count = static_cast<int>(pairs.size());
  r.nonempty = r.count > 0;
  r.pairs = std::move(pairs);
  r.c_n = c_n;
  return r;
}

}  // namespace

std::pair<double, double> degree_profile_sbm(const WeightedGraph& a,
                                             const LabelVector& sigma_star,
                                             int i) {
  require_sigma(a, sigma_star);
  if (i < 0 || i >= a.n()) throw InvalidArgs("vertex index out of range");
  double d_plus = 0.0, d_minus = 0.0;
  for (int j = 0; j < a.n(); ++j) {
    if (j == i) continue;
    if (sigma_star.values[j] == sigma_star.values[i])
      d_plus += a.entries(i, j);
    else
      d_minus += a.entries(i, j);
  }
  return {d_plus, d_minus};
}

BadSetReport bad_pairs_sbm(const WeightedGraph& a,
                           const LabelVector& sigma_star) {
  require_sigma(a, sigma_star);
  const int n = a.n();
  std::vector<double> own, cross;
  community_degrees(a, sigma_star, own, cross);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    if (sigma_star.values[i] != 1) continue;
    for (int j = 0; j < n; ++j) {
      if (sigma_star.values[j] != -1) continue;
      // d-(i\j) + d-(j\i) = cross(i) + cross(j) - 2 A_ij
      if (own[i] + own[j] < cross[i] + cross[j] - 2.0 * a.entries(i, j))
        pairs.emplace_back(i, j);
    }
  }
  return make_report(std::move(pairs));
}

std::pair<BadSetReport, BadSetReport> bad_vertices_sbm(
    const WeightedGraph& a, const LabelVector& sigma_star, double c_n) {
  require_sigma(a, sigma_star);
  if (!(c_n >= 0.0)) throw InvalidArgs("c_n must be nonnegative");
  std::vector<double> own, cross;
  community_degrees(a, sigma_star, own, cross);
  std::vector<std::pair<int, int>> plus, minus;
  for (int v = 0; v < a.n(); ++v) {
    if (own[v] < cross[v] - c_n) {
      if (sigma_star.values[v] == 1)
        plus.emplace_back(v, v);
      else
        minus.emplace_back(v, v);
    }
  }
  return {make_report(std::move(plus), c_n), make_report(std::move(minus), c_n)};
}

double default_c_n(double tau, int n) {
  return tau * std::sqrt(6.0 * std::log(static_cast<double>(n)));
}

BadSetReport bad_pairs_pds(const WeightedGraph& a,
                           const LabelVector& zeta_star) {
  require_zeta(a, zeta_star);
  const int n = a.n();
  // e(v, C*) for every vertex; the diagonal is zero so no exclusion needed.
  std::vector<double> e_planted(n, 0.0);
  for (int v = 0; v < n; ++v)
    for (int j = 0; j < n; ++j)
      if (zeta_star.values[j] == 1) e_planted[v] += a.entries(v, j);

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    if (zeta_star.values[i] != 1) continue;
    for (int j = 0; j < n; ++j) {
      if (zeta_star.values[j] != 0) continue;
      // e(j, C* \ {i}) = e(j, C*) - A_ji
      if (e_planted[i] < e_planted[j] - a.entries(j, i))
        pairs.emplace_back(i, j);
    }
  }
  return make_report(std::move(pairs));
}

SwapEvent swap_event_sets_sbm(const WeightedGraph& a,
                              const LabelVector& sigma_star, int k,
                              const std::vector<int>& s_plus,
                              const std::vector<int>& s_minus) {
  require_sigma(a, sigma_star);
  if (static_cast<int>(s_plus.size()) != k ||
      static_cast<int>(s_minus.size()) != k)
    throw InvalidArgs("swap sets must both have size k");
  const std::set<int> sp(s_plus.begin(), s_plus.end());
  const std::set<int> sm(s_minus.begin(), s_minus.end());
  if (static_cast<int>(sp.size()) != k || static_cast<int>(sm.size()) != k)
    throw InvalidArgs("swap sets must not contain duplicates");
  for (int v : sp)
    if (v < 0 || v >= a.n() || sigma_star.values[v] != 1)
      throw InvalidArgs("s_plus must lie inside C+");
  for (int v : sm)
    if (v < 0 || v >= a.n() || sigma_star.values[v] != -1)
      throw InvalidArgs("s_minus must lie inside C-");

  double lhs = 0.0, rhs = 0.0;
  for (int i = 0; i < a.n(); ++i) {
    const bool in_sp = sp.count(i) > 0;
    const bool in_sm = sm.count(i) > 0;
    if (!in_sp && !in_sm) continue;
    for (int j = 0; j < a.n(); ++j) {
      if (sigma_star.values[j] == 1) {
        // j in C+: contributes to d+(S+) when j stays, to d-(S-\S+) from S-.
        if (in_sp && !sp.count(j)) lhs += a.entries(i, j);
        if (in_sm && !sp.count(j)) rhs += a.entries(i, j);
      } else {
        if (in_sm && !sm.count(j)) lhs += a.entries(i, j);
        if (in_sp && !sm.count(j)) rhs += a.entries(i, j);
      }
    }
  }
  return SwapEvent{lhs, rhs, lhs < rhs};
}

Regime regime(const ModelParams& params, Model model) {
  Regime out;
  out.model = model;
  const double rho = snr(params);
  if (model == Model::Sbm) {
    out.thresholds_used = {{"snr", rho}, {"statistical_threshold", 1.0}};
    if (rho < 1.0)
      out.verdict = Verdict::StatImpossible;
    else if (rho > 1.0)
      out.verdict = Verdict::StatPossibleAlgPossible;
    else
      out.verdict = Verdict::OpenGap;
  } else {
    if (!params.gamma) throw InvalidArgs("regime for the planted model needs gamma");
    const double gsnr = *params.gamma * rho;
    out.thresholds_used = {{"gamma_snr", gsnr},
                           {"impossible_below", 0.75},
                           {"possible_above", 1.0}};
    if (gsnr < 0.75)
      out.verdict = Verdict::StatImpossible;
    else if (gsnr > 1.0)
      out.verdict = Verdict::StatPossibleAlgPossible;
    else
      out.verdict = Verdict::OpenGap;
  }
  return out;
}

}  // namespace rlab
