#include "rlab/linalg.hpp"

#include <lapacke.h>

#include <cfloat>
#include <cmath>
#include <vector>

namespace rlab {

namespace {

void require_finite(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) throw NumericError("matrix has non-finite entries");
}

// Ascending eigendecomposition in place: `a` holds the vectors on return.
void dsyevd_inplace(Eigen::MatrixXd& a, Eigen::VectorXd& w) {
  const int n = static_cast<int>(a.rows());
  w.resize(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                         a.data(), n, w.data());
  if (info != 0) throw NumericError("dsyevd failed to converge");
}

// out += block * diag(sign * w) * block^T via a symmetric rank-k update;
// sign * w must be entrywise nonnegative. Used to build the positive part
// (sign +1) or to strip the negative part off the original matrix (sign -1,
// which adds |w| v v^T).
void accumulate_outer(Eigen::MatrixXd& out, const Eigen::Ref<const Eigen::MatrixXd>& block,
                      const Eigen::Ref<const Eigen::VectorXd>& w, double sign) {
  Eigen::MatrixXd scaled = block;
  for (int k = 0; k < scaled.cols(); ++k)
    scaled.col(k) *= std::sqrt(std::max(sign * w(k), 0.0));
  out.selfadjointView<Eigen::Lower>().rankUpdate(scaled, 1.0);
  out.triangularView<Eigen::StrictlyUpper>() = out.transpose();
}

}  // namespace

SymMatrix::SymMatrix(Eigen::MatrixXd m) {
  if (m.rows() != m.cols()) throw InvalidArgs("symmetric matrix must be square");
  data_ = 0.5 * (m + m.transpose());
}

EigenDecomposition sym_eig(const SymMatrix& m) {
  require_finite(m.data());
  Eigen::MatrixXd v = m.data();
  Eigen::VectorXd w;
  dsyevd_inplace(v, w);
  const int n = m.n();
  EigenDecomposition out;
  out.values = w.reverse();
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) out.vectors.col(k) = v.col(n - 1 - k);
  return out;
}

double spectral_norm(const SymMatrix& m) {
  if (m.n() == 0) return 0.0;
  const EigenDecomposition eig = sym_eig(m);
  return std::max(std::abs(eig.values(0)), std::abs(eig.values(m.n() - 1)));
}

SymMatrix psd_project(const SymMatrix& m) {
  return SymMatrix(psd_project_hinted(m, -1).projection);
}

PsdPart psd_project_hinted(const SymMatrix& m, int expected_positive) {
  require_finite(m.data());
  const int n = m.n();
  PsdPart out;

  // Range query on the thin side of the spectrum when the hint justifies it;
  // dsyevr returns exactly the eigenpairs in the interval, so either route
  // yields the same projection.
  const bool thin_positive = expected_positive >= 0 && expected_positive <= n / 8;
  const bool thin_negative = expected_positive >= 0 && expected_positive >= n - n / 8;
  if (thin_positive || thin_negative) {
    Eigen::MatrixXd a = m.data();
    Eigen::VectorXd w(n);
    Eigen::MatrixXd z(n, n);
    std::vector<lapack_int> isuppz(2 * static_cast<size_t>(n) + 2);
    lapack_int found = 0;
    const double vl = thin_positive ? 0.0 : -DBL_MAX;
    const double vu = thin_positive ? DBL_MAX : 0.0;
    const lapack_int info =
        LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'V', 'L', n, a.data(), n, vl, vu,
                       0, 0, 0.0, &found, w.data(), z.data(), n, isuppz.data());
    if (info == 0) {
      if (thin_positive) {
        out.projection = Eigen::MatrixXd::Zero(n, n);
        if (found > 0)
          accumulate_outer(out.projection, z.leftCols(found), w.head(found), 1.0);
        out.positive_count = found;
      } else {
        // (vl, 0] can include zero eigenvalues; subtracting them is a no-op.
        out.projection = m.data();
        if (found > 0)
          accumulate_outer(out.projection, z.leftCols(found), w.head(found), -1.0);
        out.positive_count = n - found;
      }
      return out;
    }
    // fall through to the full decomposition on failure
  }

  Eigen::MatrixXd v = m.data();
  Eigen::VectorXd w;
  dsyevd_inplace(v, w);
  int first_pos = n;
  for (int k = 0; k < n; ++k) {
    if (w(k) > 0.0) {
      first_pos = k;
      break;
    }
  }
  const int pos = n - first_pos;
  out.positive_count = pos;
  // reconstruct from whichever side of the spectrum is thinner
  if (pos == 0) {
    out.projection = Eigen::MatrixXd::Zero(n, n);
  } else if (pos <= n - pos) {
    out.projection = Eigen::MatrixXd::Zero(n, n);
    accumulate_outer(out.projection, v.rightCols(pos), w.tail(pos), 1.0);
  } else {
    out.projection = m.data();
    if (first_pos > 0)
      accumulate_outer(out.projection, v.leftCols(first_pos), w.head(first_pos),
                       -1.0);
  }
  return out;
}

namespace {

// Exact count of positive eigenvalues via the inertia of the Bunch-Kaufman
// LDL^T factorization (Sylvester's law). O(n^3/3), no eigenvectors.
int positive_inertia(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::MatrixXd a = m;
  std::vector<lapack_int> ipiv(n);
  const lapack_int info =
      LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, a.data(), n, ipiv.data());
  if (info < 0) throw NumericError("dsytrf failed");
  int pos = 0;
  for (int k = 0; k < n;) {
    if (ipiv[k] > 0) {
      pos += a(k, k) > 0.0;
      ++k;
    } else {
      // 2x2 pivot block [d11 d21; d21 d22]
      const double d11 = a(k, k), d22 = a(k + 1, k + 1), d21 = a(k + 1, k);
      const double det = d11 * d22 - d21 * d21;
      if (det < 0.0) {
        pos += 1;  // one eigenvalue of each sign
      } else if (det > 0.0) {
        pos += (d11 + d22 > 0.0) ? 2 : 0;
      } else {
        pos += (d11 + d22 > 0.0) ? 1 : 0;  // singular block: one zero
      }
      k += 2;
    }
  }
  return pos;
}

// Deterministic filler directions for growing the subspace block.
Eigen::MatrixXd filler_block(int n, int cols) {
  Eigen::MatrixXd f(n, cols);
  std::uint64_t counter = 0;
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < n; ++i) {
      const std::uint64_t bits =
          (0x9E3779B97F4A7C15ULL * (counter + 1)) ^ (counter >> 7);
      f(i, j) = static_cast<double>(static_cast<std::int64_t>(bits)) /
                9.22e18;
      ++counter;
    }
  return f;
}

}  // namespace

PsdPart PositivePartTracker::project(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  if (!m.allFinite()) throw NumericError("matrix has non-finite entries");

  const double scale = m.cwiseAbs().maxCoeff();
  PsdPart out;
  if (scale == 0.0) {
    out.projection = Eigen::MatrixXd::Zero(n, n);
    out.positive_count = 0;
    return out;
  }

  const int pos = positive_inertia(m);
  out.positive_count = pos;
  if (pos == 0) {
    out.projection = Eigen::MatrixXd::Zero(n, n);
    basis_.resize(0, 0);
    return out;
  }

  // A wide positive block gains nothing over the dense path.
  if (pos > n / 4 || n < 32) {
    const PsdPart dense = psd_project_hinted(SymMatrix(m), -1);
    basis_.resize(0, 0);
    return dense;
  }

  const int block = std::min(n, pos + 8);
  Eigen::MatrixXd v(n, block);
  {
    int have = 0;
    if (basis_.rows() == n && basis_.cols() > 0) {
      have = std::min<int>(block, static_cast<int>(basis_.cols()));
      v.leftCols(have) = basis_.leftCols(have);
    }
    if (have < block) v.rightCols(block - have) = filler_block(n, block - have);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
    v = qr.householderQ() * Eigen::MatrixXd::Identity(n, block);
  }

  // Shift by a Gershgorin bound so the power step ranks eigenvalues by value,
  // not magnitude; the Rayleigh-Ritz step still sees m itself.
  const double shift = m.cwiseAbs().rowwise().sum().maxCoeff() + scale;
  const double tol = 1e-9 * scale * n;
  for (int round = 0; round < 30; ++round) {
    const Eigen::MatrixXd w = m * v;  // one block matvec per round
    Eigen::MatrixXd small = v.transpose() * w;
    small = 0.5 * (small + small.transpose());
    Eigen::VectorXd theta;
    dsyevd_inplace(small, theta);  // ascending

    // Ritz pairs, leading values first
    Eigen::MatrixXd q(block, block);
    for (int k = 0; k < block; ++k) q.col(k) = small.col(block - 1 - k);
    Eigen::VectorXd vals = theta.reverse();
    const Eigen::MatrixXd ritz = v * q;
    const Eigen::MatrixXd resid = w * q - ritz * vals.asDiagonal();

    // The inertia count already proves how many positive eigenvalues exist;
    // certification only needs the leading `pos` Ritz pairs tight. A value in
    // (-tol, 0] among them is a boundary crosser whose true contribution is
    // below tol; it is clamped rather than rejected.
    bool certified = true;
    for (int k = 0; certified && k < pos; ++k)
      certified = vals(k) > -tol && resid.col(k).norm() <= tol;

    if (certified) {
      out.projection = Eigen::MatrixXd::Zero(n, n);
      accumulate_outer(out.projection, ritz.leftCols(pos), vals.head(pos), 1.0);
      basis_ = ritz;
      return out;
    }
    // next round: shifted power step with orthonormalization
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(w + shift * v);
    v = qr.householderQ() * Eigen::MatrixXd::Identity(n, block);
  }

  // not converged: dense fallback, and reseed the basis from the exact
  // leading eigenvectors
  Eigen::MatrixXd full = m;
  Eigen::VectorXd wfull;
  dsyevd_inplace(full, wfull);
  out.projection = Eigen::MatrixXd::Zero(n, n);
  accumulate_outer(out.projection, full.rightCols(pos), wfull.tail(pos), 1.0);
  basis_.resize(n, block);
  for (int k = 0; k < block; ++k) basis_.col(k) = full.col(n - 1 - k);
  return out;
}

double second_smallest_eigenvalue_on_complement(const SymMatrix& m,
                                                const Eigen::VectorXd& direction) {
  const int n = m.n();
  if (direction.size() != n) throw InvalidArgs("direction dimension mismatch");
  if (n < 2) throw InvalidArgs("complement restriction needs n >= 2");
  if (std::abs(direction.norm() - 1.0) > 1e-10)
    throw InvalidArgs("direction must be a unit vector");
  require_finite(m.data());

  // P M P + c d d^T with c above the spectral range pushes the deflated
  // direction to the top, leaving min eig = min Rayleigh over the complement.
  const Eigen::VectorXd md = m.data() * direction;
  const double dmd = direction.dot(md);
  const double bound = m.data().cwiseAbs().rowwise().sum().maxCoeff();
  const double shift = bound + std::abs(dmd) + 1.0;

  Eigen::MatrixXd work = m.data();
  work.noalias() -= direction * md.transpose();
  work.noalias() -= md * direction.transpose();
  work.noalias() += (dmd + shift) * direction * direction.transpose();

  Eigen::MatrixXd v = 0.5 * (work + work.transpose());
  Eigen::VectorXd w;
  dsyevd_inplace(v, w);
  return w(0);
}

}  // namespace rlab
