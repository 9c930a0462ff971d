#pragma once

#include <Eigen/Core>

#include "rlab/common.hpp"

namespace rlab {

// Dense symmetric matrix; ingest symmetrizes as (M + M^T)/2 so downstream
// eigensolvers always see an exactly symmetric operand.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Eigen::MatrixXd m);

  const Eigen::MatrixXd& data() const { return data_; }
  int n() const { return static_cast<int>(data_.rows()); }

 private:
  Eigen::MatrixXd data_;
};

struct EigenDecomposition {
  Eigen::VectorXd values;   // sorted descending
  Eigen::MatrixXd vectors;  // column k pairs with values[k]
};

// Full symmetric eigendecomposition (LAPACK dsyevd), eigenvalues descending.
// Throws NumericError on non-finite input or solver failure.
EigenDecomposition sym_eig(const SymMatrix& m);

// Largest absolute eigenvalue.
double spectral_norm(const SymMatrix& m);

// Frobenius-nearest positive semidefinite matrix: eigendecompose, clamp
// negative eigenvalues to zero, reconstruct.
SymMatrix psd_project(const SymMatrix& m);

struct PsdPart {
  Eigen::MatrixXd projection;
  int positive_count = 0;
};

// psd_project with a hint for the expected number of positive eigenvalues.
// When the hint says one side of the spectrum is thin, only that side is
// computed (LAPACK dsyevr range query); the result is the same projection.
// hint < 0 means unknown and falls back to the full decomposition.
PsdPart psd_project_hinted(const SymMatrix& m, int expected_positive);

// min_{x perp direction, |x| = 1} <x, M x>, computed by deflating the
// direction with a large spectral shift. `direction` must be unit length
// within 1e-10.
double second_smallest_eigenvalue_on_complement(const SymMatrix& m,
                                                const Eigen::VectorXd& direction);

// Iterative variant of psd_project for a sequence of slowly drifting
// matrices (the ADMM inner loop): block subspace iteration warm-started from
// the previous call's basis. Every call certifies itself against the exact
// number of positive eigenvalues obtained from an LDL^T inertia count and
// falls back to the dense path when the iteration has not converged, so the
// result matches psd_project to tight tolerance on every input.
//
// The input must be exactly symmetric (no symmetrization pass is performed).
class PositivePartTracker {
 public:
  PsdPart project(const Eigen::MatrixXd& symmetric_input);

 private:
  Eigen::MatrixXd basis_;  // orthonormal working block from the last call
};

}  // namespace rlab
