#include "rlab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace rlab {

namespace {

void require_labels(const WeightedGraph& a, const LabelVector& labels,
                    LabelKind kind, const char* what) {
  if (labels.kind != kind) throw InvalidArgs(std::string(what) + ": wrong label kind");
  if (labels.n() != a.n()) throw InvalidArgs(std::string(what) + ": size mismatch");
}

double quad_form(const Eigen::MatrixXd& a, const std::vector<int>& v) {
  const int n = static_cast<int>(v.size());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += a(i, j) * v[j];
    total += row * v[i];
  }
  return total;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

LabelVector sign_labels(const Eigen::VectorXd& u) {
  std::vector<int> sigma(u.size());
  for (int i = 0; i < u.size(); ++i) sigma[i] = u(i) < 0.0 ? -1 : 1;
  return LabelVector::sbm(std::move(sigma));
}

}  // namespace

void SolverOptions::validate() const {
  if (!(rho > 0.0)) throw InvalidArgs("rho must be positive");
  if (max_iters <= 0) throw InvalidArgs("max_iters must be positive");
  if (primal_tol && !(*primal_tol > 0.0)) throw InvalidArgs("primal_tol must be positive");
  if (dual_tol && !(*dual_tol > 0.0)) throw InvalidArgs("dual_tol must be positive");
  if (!(eig_tol > 0.0)) throw InvalidArgs("eig_tol must be positive");
}

double objective_sbm(const WeightedGraph& a, const LabelVector& sigma) {
  require_labels(a, sigma, LabelKind::SbmSigma, "objective_sbm");
  return quad_form(a.entries, sigma.values);
}

double objective_pds(const WeightedGraph& a, const LabelVector& zeta) {
  require_labels(a, zeta, LabelKind::PdsZeta, "objective_pds");
  return quad_form(a.entries, zeta.values);
}

EstimateResult mle_sbm_exhaustive(const WeightedGraph& a) {
  const int n = a.n();
  if (n % 2 != 0) throw InvalidArgs("exhaustive MLE needs even n");
  if (n > 20) throw InvalidArgs("exhaustive MLE guarded to n <= 20");

  // Balanced sigma with sigma_0 = +1: choose the other n/2 - 1 plus-vertices
  // from {1, ..., n-1}.
  const int k = n / 2 - 1;
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 1);

  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> best_sigma;
  bool tie = false;
  std::vector<int> sigma(n);

  auto visit = [&]() {
    std::fill(sigma.begin(), sigma.end(), -1);
    sigma[0] = 1;
    for (int idx : pick) sigma[idx] = 1;
    const double f = quad_form(a.entries, sigma);
    if (f > best) {
      best = f;
      best_sigma = sigma;
      tie = false;
    } else if (f == best) {
      tie = true;
      if (std::lexicographical_compare(sigma.begin(), sigma.end(),
                                       best_sigma.begin(), best_sigma.end()))
        best_sigma = sigma;
    }
  };

  if (k == 0) {
    visit();
  } else {
    while (true) {
      visit();
      // next combination in lexicographic order
      int i = k - 1;
      while (i >= 0 && pick[i] == n - k + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  return EstimateResult{LabelVector::sbm(std::move(best_sigma)), best, tie, {}};
}

EstimateResult mle_pds_exhaustive(const WeightedGraph& a, double gamma) {
  const int n = a.n();
  const double kd = gamma * n;
  if (std::abs(kd - std::round(kd)) > 1e-9)
    throw InvalidArgs("gamma * n must be an integer");
  const int k = static_cast<int>(std::llround(kd));
  if (k < 1 || k > n) throw InvalidArgs("planted size out of range");
  if (binomial(n, k) > 2e5)
    throw InvalidArgs("exhaustive PDS MLE guarded to C(n, gamma n) <= 2e5");

  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);

  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> best_pick;
  bool tie = false;
  std::vector<int> zeta(n);

  while (true) {
    std::fill(zeta.begin(), zeta.end(), 0);
    for (int idx : pick) zeta[idx] = 1;
    const double g = quad_form(a.entries, zeta);
    if (g > best) {
      best = g;
      best_pick = pick;
      tie = false;
    } else if (g == best) {
      tie = true;
      if (std::lexicographical_compare(pick.begin(), pick.end(),
                                       best_pick.begin(), best_pick.end()))
        best_pick = pick;
    }
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }

  std::fill(zeta.begin(), zeta.end(), 0);
  for (int idx : best_pick) zeta[idx] = 1;
  return EstimateResult{LabelVector::pds(std::move(zeta)), best, tie, {}};
}

EstimateResult spectral_sbm(const WeightedGraph& a, const ModelParams& params,
                            bool plugin_mean) {
  const int n = a.n();
  if (n % 2 != 0) throw InvalidArgs("spectral estimator needs even n");
  if (params.n != n) throw InvalidArgs("params/graph size mismatch");

  double center;
  if (plugin_mean) {
    center = (a.entries.sum() - a.entries.diagonal().sum()) /
             (static_cast<double>(n) * n - n);
  } else {
    const auto [mu1, mu2] = scaled_means(params);
    center = 0.5 * (mu1 + mu2);
  }
  Eigen::MatrixXd b =
      a.entries - center * Eigen::MatrixXd::Ones(n, n);
  const EigenDecomposition eig = sym_eig(SymMatrix(std::move(b)));
  EstimateResult out{sign_labels(eig.vectors.col(0)), 0.0, false, {}};
  out.objective = objective_sbm(a, out.labels);
  return out;
}

namespace {

// Projection onto {diag(Y) = 1, <J, Y> = 0}: the diagonal coordinates are
// pinned and the off-diagonal block shifts uniformly to meet the sum
// constraint; the two act on disjoint coordinates so the composition is the
// exact Euclidean projection.
void project_affine_sbm(Eigen::MatrixXd& y) {
  const int n = static_cast<int>(y.rows());
  const double off_sum = y.sum() - y.diagonal().sum();
  const double shift =
      (-static_cast<double>(n) - off_sum) / (static_cast<double>(n) * n - n);
  y.array() += shift;
  y.diagonal().setConstant(1.0);
}

// Exact projection onto the two-hyperplane set {<I,Z> = gamma n,
// <J,Z> = gamma^2 n^2}: correct by a I + b J where (a, b) solves the 2x2
// normal equations.
void project_affine_pds(Eigen::MatrixXd& z, double gamma) {
  const double n = static_cast<double>(z.rows());
  const double r1 = gamma * n - z.diagonal().sum();
  const double r2 = gamma * gamma * n * n - z.sum();
  const double b = (r2 - r1) / (n * n - n);
  const double a = r1 / n - b;
  z.array() += b;
  z.diagonal().array() += a;
}

void clamp_box_pds(Eigen::MatrixXd& z) {
  z = z.cwiseMax(0.0);
  z.diagonal() = z.diagonal().cwiseMin(1.0);
}

// Dykstra alternation between the box and the affine pair; returns the last
// affine-projected iterate so the equality constraints hold exactly.
Eigen::MatrixXd project_polyhedron_pds(Eigen::MatrixXd z, double gamma,
                                       double tol, int max_inner) {
  const int n = static_cast<int>(z.rows());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd prev = z;
  for (int inner = 0; inner < max_inner; ++inner) {
    Eigen::MatrixXd y = z + p;
    clamp_box_pds(y);
    p = z + p - y;
    z = y + q;
    project_affine_pds(z, gamma);
    q = y + q - z;
    if ((z - prev).cwiseAbs().maxCoeff() <= tol) break;
    prev = z;
  }
  return z;
}

struct AdmmProblem {
  const Eigen::MatrixXd& drive;  // A / rho_eff
  double rho_eff;
};

template <typename ProjectFn>
SdpSolution run_admm(const WeightedGraph& a, const SolverOptions& opts,
                     ProjectFn&& project_constraints) {
  opts.validate();
  const int n = a.n();
  const double ptol = opts.resolved_primal_tol(n);
  const double dtol = opts.resolved_dual_tol(n);

  const double data_norm = spectral_norm(SymMatrix(a.entries));
  const double rho_eff = opts.rho * (data_norm > 0.0 ? data_norm : 1.0);
  const Eigen::MatrixXd drive = a.entries / rho_eff;

  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
  // z and u stay exactly symmetric (every update is an entrywise map of
  // symmetric matrices), so the tracker can skip symmetrization.
  PositivePartTracker tracker;

  SdpSolution sol;
  for (int it = 1; it <= opts.max_iters; ++it) {
    const PsdPart part = tracker.project(z - u);
    Eigen::MatrixXd znew = part.projection + u + drive;
    project_constraints(znew);
    sol.primal_residual = (part.projection - znew).norm();
    sol.dual_residual = rho_eff * (znew - z).norm();
    u += part.projection - znew;
    z.swap(znew);
    sol.iterations = it;
    if (sol.primal_residual <= ptol && sol.dual_residual <= dtol) {
      sol.converged = true;
      break;
    }
  }
  sol.matrix = SymMatrix(std::move(z));
  return sol;
}

}  // namespace

SdpSolution sdp_sbm(const WeightedGraph& a, const SolverOptions& opts) {
  if (a.n() % 2 != 0) throw InvalidArgs("sdp_sbm needs even n");
  return run_admm(a, opts, [](Eigen::MatrixXd& y) { project_affine_sbm(y); });
}

EstimateResult round_sdp_sbm(const SdpSolution& sol) {
  const EigenDecomposition eig = sym_eig(sol.matrix);
  EstimateResult out{sign_labels(eig.vectors.col(0)), 0.0, false, {}};
  out.solver = SolverStats{sol.iterations, sol.primal_residual,
                           sol.dual_residual, sol.converged};
  return out;
}

SdpSolution sdp_pds(const WeightedGraph& a, double gamma,
                    const SolverOptions& opts) {
  const double kd = gamma * a.n();
  if (std::abs(kd - std::round(kd)) > 1e-9)
    throw InvalidArgs("gamma * n must be an integer");
  return run_admm(a, opts, [gamma](Eigen::MatrixXd& z) {
    z = project_polyhedron_pds(std::move(z), gamma, 1e-8, 200);
  });
}

EstimateResult round_sdp_pds(const SdpSolution& sol, double gamma) {
  const int n = sol.matrix.n();
  const double kd = gamma * n;
  if (std::abs(kd - std::round(kd)) > 1e-9)
    throw InvalidArgs("gamma * n must be an integer");
  const int k = static_cast<int>(std::llround(kd));

  const EigenDecomposition eig = sym_eig(sol.matrix);
  Eigen::VectorXd v = eig.vectors.col(0);
  if (v.sum() < 0.0) v = -v;

  // Rank on keys quantized to 12 significant digits: entries that are equal
  // up to eigensolver noise tie and fall back to the smallest index.
  std::vector<double> key(n);
  for (int i = 0; i < n; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v(i));
    key[i] = std::atof(buf);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&key](int i, int j) { return key[i] > key[j]; });

  std::vector<int> zeta(n, 0);
  for (int i = 0; i < k; ++i) zeta[order[i]] = 1;
  EstimateResult out{LabelVector::pds(std::move(zeta)), 0.0, false, {}};
  out.solver = SolverStats{sol.iterations, sol.primal_residual,
                           sol.dual_residual, sol.converged};
  return out;
}

}  // namespace rlab
