#include "rlab/certificates.hpp"

#include <cmath>

#include "rlab/linalg.hpp"

namespace rlab {

namespace {

double resolve_tol(double tol_cert, int n) {
  return tol_cert < 0.0 ? 1e-8 * n : tol_cert;
}

}  // namespace

SbmCertificate certificate_sbm(const WeightedGraph& a,
                               const LabelVector& sigma_star,
                               const ModelParams& params, double tol_cert) {
  if (sigma_star.kind != LabelKind::SbmSigma)
    throw InvalidArgs("certificate_sbm expects sigma labels");
  const int n = a.n();
  if (sigma_star.n() != n || params.n != n)
    throw InvalidArgs("certificate_sbm: size mismatch");
  if (!sigma_star.is_balanced())
    throw InvalidArgs("certificate_sbm expects a balanced labeling");

  SbmCertificate cert;
  cert.tol_cert = resolve_tol(tol_cert, n);
  const auto [mu1, mu2] = scaled_means(params);
  cert.lambda_star = 0.5 * (mu1 + mu2);

  Eigen::VectorXd sigma(n);
  for (int i = 0; i < n; ++i) sigma(i) = sigma_star.values[i];
  const Eigen::VectorXd a_sigma = a.entries * sigma;
  cert.d_star = sigma.cwiseProduct(a_sigma);
  cert.min_d = cert.d_star.minCoeff();
  cert.min_d_sufficient =
      cert.min_d > 4.0 * params.tau * std::sqrt(static_cast<double>(n));

  const Eigen::MatrixXd s = slack_matrix_sbm(a, sigma_star, cert);
  cert.lambda2 = second_smallest_eigenvalue_on_complement(
      SymMatrix(s), sigma / sigma.norm());
  cert.holds = cert.lambda2 > cert.tol_cert;
  return cert;
}

Eigen::MatrixXd slack_matrix_sbm(const WeightedGraph& a,
                                 const LabelVector& sigma_star,
                                 const SbmCertificate& cert) {
  const int n = a.n();
  Eigen::MatrixXd s =
      -a.entries + cert.lambda_star * Eigen::MatrixXd::Ones(n, n);
  s.diagonal() += cert.d_star;
  (void)sigma_star;
  return s;
}

PdsCertificate certificate_pds(const WeightedGraph& a,
                               const LabelVector& zeta_star,
                               const ModelParams& params, double tol_cert) {
  if (zeta_star.kind != LabelKind::PdsZeta)
    throw InvalidArgs("certificate_pds expects zeta labels");
  const int n = a.n();
  if (zeta_star.n() != n || params.n != n)
    throw InvalidArgs("certificate_pds: size mismatch");
  const int k = params.planted_size();
  if (zeta_star.ones_count() != k)
    throw InvalidArgs("certificate_pds: planted size mismatch with gamma");

  PdsCertificate cert;
  cert.tol_cert = resolve_tol(tol_cert, n);
  const auto [mu1, mu2] = scaled_means(params);
  cert.lambda_star = 0.5 * (mu1 + mu2);

  const Eigen::MatrixXd ea = expected_adjacency(params, zeta_star);
  cert.eta_star = 2.0 * spectral_norm(SymMatrix(a.entries - ea));

  Eigen::VectorXd zeta(n);
  for (int i = 0; i < n; ++i) zeta(i) = zeta_star.values[i];
  const double gn = static_cast<double>(k);
  const Eigen::VectorXd a_zeta = a.entries * zeta;

  // d_i = <(A - eta I - lambda J)_i, zeta> on the planted set;
  // b_i = <(lambda J - A)_i, zeta> / (gamma n) off it.
  cert.d_star = Eigen::VectorXd::Zero(n);
  cert.b_star = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (zeta_star.values[i] == 1) {
      cert.d_star(i) = a_zeta(i) - cert.eta_star * zeta(i) - cert.lambda_star * gn;
    } else {
      cert.b_star(i) = (cert.lambda_star * gn - a_zeta(i)) / gn;
    }
  }

  double min_d = std::numeric_limits<double>::infinity();
  double min_b = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (zeta_star.values[i] == 1)
      min_d = std::min(min_d, cert.d_star(i));
    else
      min_b = std::min(min_b, cert.b_star(i));
  }
  cert.min_d = min_d;
  cert.min_b = min_b;
  cert.nonneg_d = min_d >= 0.0;
  cert.nonneg_b = min_b >= 0.0;

  const Eigen::MatrixXd s = slack_matrix_pds(a, zeta_star, cert);
  cert.lambda2 = second_smallest_eigenvalue_on_complement(
      SymMatrix(s), zeta / zeta.norm());
  cert.holds = cert.nonneg_d && cert.nonneg_b && cert.lambda2 > cert.tol_cert;
  return cert;
}

Eigen::MatrixXd slack_matrix_pds(const WeightedGraph& a,
                                 const LabelVector& zeta_star,
                                 const PdsCertificate& cert) {
  const int n = a.n();
  Eigen::MatrixXd s =
      -a.entries + cert.lambda_star * Eigen::MatrixXd::Ones(n, n);
  s.diagonal().array() += cert.eta_star;
  s.diagonal() += cert.d_star;
  // B only couples planted with non-planted vertices.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (zeta_star.values[i] == 0 && zeta_star.values[j] == 1)
        s(i, j) -= cert.b_star(i);
      else if (zeta_star.values[i] == 1 && zeta_star.values[j] == 0)
        s(i, j) -= cert.b_star(j);
    }
  }
  return s;
}

}  // namespace rlab
