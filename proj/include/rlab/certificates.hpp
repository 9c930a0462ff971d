#pragma once

#include <Eigen/Core>

#include "rlab/model.hpp"

namespace rlab {

// Dual certificate for the two-community SDP: with d_i = sum_j A_ij s_i s_j
// and lambda = (mu1 + mu2)/2, the slack S = D - A + lambda J satisfies
// S sigma* = 0 by construction, and the certificate holds when the minimum
// Rayleigh quotient of S over the complement of sigma* clears tol_cert.
struct SbmCertificate {
  Eigen::VectorXd d_star;
  double lambda_star = 0.0;
  double lambda2 = 0.0;
  double min_d = 0.0;
  bool min_d_sufficient = false;  // informational: min_d > 4 tau sqrt(n)
  bool holds = false;
  double tol_cert = 0.0;
};

// Dual certificate for the planted-set SDP (oracle diagnostic: needs the true
// labels and parameters to form E[A]). Components follow the complementary
// slackness pattern: d vanishes off the planted set, b on it, and
// S = D - B - A + eta I + lambda J annihilates zeta*.
struct PdsCertificate {
  Eigen::VectorXd d_star;
  Eigen::VectorXd b_star;
  double lambda_star = 0.0;
  double eta_star = 0.0;
  double lambda2 = 0.0;
  double min_d = 0.0;
  double min_b = 0.0;
  bool nonneg_d = false;
  bool nonneg_b = false;
  bool holds = false;
  double tol_cert = 0.0;
};

// tol_cert < 0 selects the default 1e-8 * n.
SbmCertificate certificate_sbm(const WeightedGraph& a,
                               const LabelVector& sigma_star,
                               const ModelParams& params,
                               double tol_cert = -1.0);

PdsCertificate certificate_pds(const WeightedGraph& a,
                               const LabelVector& zeta_star,
                               const ModelParams& params,
                               double tol_cert = -1.0);

// The slack matrices, exposed for verification.
Eigen::MatrixXd slack_matrix_sbm(const WeightedGraph& a,
                                 const LabelVector& sigma_star,
                                 const SbmCertificate& cert);
Eigen::MatrixXd slack_matrix_pds(const WeightedGraph& a,
                                 const LabelVector& zeta_star,
                                 const PdsCertificate& cert);

}  // namespace rlab
