#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rlab/model.hpp"

namespace rlab {

enum class Model { Sbm, Pds };

// Result of a bad-pair or bad-vertex scan. For the vertex variants each
// offending vertex v is stored as the degenerate pair (v, v).
struct BadSetReport {
  std::vector<std::pair<int, int>> pairs;
  int count = 0;
  bool nonempty = false;
  std::optional<double> c_n;  // bad-vertex variant only
};

// (d_plus, d_minus): weighted degree of vertex i into its own community and
// into the opposite one; the diagonal entry is excluded.
std::pair<double, double> degree_profile_sbm(const WeightedGraph& a,
                                             const LabelVector& sigma_star,
                                             int i);

// All pairs (i in C+, j in C-) whose swap strictly increases f_A, via the
// local condition d+(i) + d+(j) < d-(i\j) + d-(j\i).
BadSetReport bad_pairs_sbm(const WeightedGraph& a,
                           const LabelVector& sigma_star);

// Vertices whose own-community degree trails the cross-community degree by
// more than c_n, per community.
std::pair<BadSetReport, BadSetReport> bad_vertices_sbm(
    const WeightedGraph& a, const LabelVector& sigma_star, double c_n);

// The proof's choice c_n = tau * sqrt(6 log n).
double default_c_n(double tau, int n);

// All pairs (i in C*, j outside) with e(i, C*) < e(j, C* \ {i}).
BadSetReport bad_pairs_pds(const WeightedGraph& a,
                           const LabelVector& zeta_star);

struct SwapEvent {
  double lhs = 0.0;
  double rhs = 0.0;
  bool violated = false;  // lhs < rhs, i.e. the k-swap beats the planted labeling
};

// Evaluates both sides of the k-swap event d+(S+) + d+(S-) < d-(S+\S-) +
// d-(S-\S+) for S+ in C+, S- in C- with |S+| = |S-| = k.
SwapEvent swap_event_sets_sbm(const WeightedGraph& a,
                              const LabelVector& sigma_star, int k,
                              const std::vector<int>& s_plus,
                              const std::vector<int>& s_minus);

enum class Verdict { StatImpossible, StatPossibleAlgPossible, OpenGap };

struct Regime {
  Model model = Model::Sbm;
  Verdict verdict = Verdict::OpenGap;
  std::vector<std::pair<std::string, double>> thresholds_used;
};

// Classifies (params, model) against the recovery thresholds: SNR 1 for the
// two-community model; gamma*SNR in [3/4, 1] is the open window for the
// planted-set model.
Regime regime(const ModelParams& params, Model model);

}  // namespace rlab
