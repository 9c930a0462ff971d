#pragma once

#include <optional>

#include "rlab/linalg.hpp"
#include "rlab/model.hpp"

namespace rlab {

// First-order solver knobs. rho is a dimensionless penalty factor; the solver
// multiplies it by the spectral norm of the data matrix so the default works
// across problem sizes. Residual tolerances default to 1e-6 * n when unset.
struct SolverOptions {
  double rho = 1.0;
  int max_iters = 5000;
  std::optional<double> primal_tol;
  std::optional<double> dual_tol;
  double eig_tol = 1e-10;

  double resolved_primal_tol(int n) const {
    return primal_tol ? *primal_tol : 1e-6 * n;
  }
  double resolved_dual_tol(int n) const {
    return dual_tol ? *dual_tol : 1e-6 * n;
  }
  void validate() const;
};

struct SdpSolution {
  SymMatrix matrix;  // last affine/polyhedral iterate
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  bool converged = false;
};

struct SolverStats {
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  bool converged = false;
};

struct EstimateResult {
  LabelVector labels;
  double objective = 0.0;
  bool tie = false;  // exhaustive searches only
  std::optional<SolverStats> solver;
};

// f_A(sigma) = sum over ordered pairs (i, j) of A_ij sigma_i sigma_j.
double objective_sbm(const WeightedGraph& a, const LabelVector& sigma);

// g_A(zeta) = sum over ordered pairs (i, j) of A_ij zeta_i zeta_j.
double objective_pds(const WeightedGraph& a, const LabelVector& zeta);

// Exhaustive maximization of f_A over balanced sigma with sigma_0 = +1.
// Guarded to n <= 20; ties are broken toward the lexicographically smallest
// sigma and surfaced via the tie flag.
EstimateResult mle_sbm_exhaustive(const WeightedGraph& a);

// Exhaustive maximization of g_A over all size-(gamma n) subsets, guarded to
// C(n, gamma n) <= 2e5; ties break toward the smallest index set.
EstimateResult mle_pds_exhaustive(const WeightedGraph& a, double gamma);

// sign of the top eigenvector of B = A - (n(mu1+mu2)/2) * (1/sqrt n)(1/sqrt n)^T.
// With plugin_mean the centering constant is estimated from the off-diagonal
// sample mean instead of taken from params (opt-in; outside the theorem).
EstimateResult spectral_sbm(const WeightedGraph& a, const ModelParams& params,
                            bool plugin_mean = false);

// ADMM for  max <A, Y>  s.t.  Y psd, diag(Y) = 1, <J, Y> = 0.
SdpSolution sdp_sbm(const WeightedGraph& a, const SolverOptions& opts = {});

EstimateResult round_sdp_sbm(const SdpSolution& sol);

// ADMM for  max <A, Z>  s.t.  Z psd, 0 <= Z_ij, Z_ii <= 1,
// <I, Z> = gamma n, <J, Z> = gamma^2 n^2. The polyhedral projection runs
// Dykstra's alternation between the entrywise box and the two-hyperplane
// affine set.
SdpSolution sdp_pds(const WeightedGraph& a, double gamma,
                    const SolverOptions& opts = {});

EstimateResult round_sdp_pds(const SdpSolution& sol, double gamma);

}  // namespace rlab
