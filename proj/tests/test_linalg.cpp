#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "rlab/linalg.hpp"
#include "rlab/rng.hpp"

using namespace rlab;

namespace {

Eigen::MatrixXd random_sym(int n, std::uint64_t seed) {
  Eigen::MatrixXd m(n, n);
  CounterRng rng(seed);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = rng.next_gauss();
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

}  // namespace

TEST_CASE("sym_eig diagonal and identity cases") {
  const auto id = sym_eig(SymMatrix(Eigen::MatrixXd::Identity(3, 3)));
  for (int k = 0; k < 3; ++k) CHECK(id.values(k) == doctest::Approx(1.0));

  Eigen::Vector3d d(3.0, -1.0, 2.0);
  const auto eig = sym_eig(SymMatrix(Eigen::MatrixXd(d.asDiagonal())));
  CHECK(eig.values(0) == doctest::Approx(3.0));
  CHECK(eig.values(1) == doctest::Approx(2.0));
  CHECK(eig.values(2) == doctest::Approx(-1.0));
}

TEST_CASE("sym_eig rank-one Gram matrix") {
  Eigen::Vector4d sigma(1, -1, 1, -1);
  const auto eig = sym_eig(SymMatrix(sigma * sigma.transpose()));
  CHECK(eig.values(0) == doctest::Approx(4.0).epsilon(1e-12));
  for (int k = 1; k < 4; ++k) CHECK(std::abs(eig.values(k)) < 1e-10);
  const Eigen::Vector4d u = eig.vectors.col(0);
  const double overlap = std::abs(u.dot(sigma) / 2.0);
  CHECK(overlap == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("sym_eig residuals, orthonormality, reconstruction on random input") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SymMatrix m(random_sym(8, seed));
    const auto eig = sym_eig(m);
    const double scale = m.data().cwiseAbs().maxCoeff();
    for (int k = 0; k < 8; ++k) {
      const double resid =
          (m.data() * eig.vectors.col(k) - eig.values(k) * eig.vectors.col(k))
              .norm();
      CHECK(resid <= 1e-8 * (1.0 + scale));
    }
    const Eigen::MatrixXd vtv =
        eig.vectors.transpose() * eig.vectors - Eigen::MatrixXd::Identity(8, 8);
    CHECK(vtv.cwiseAbs().maxCoeff() <= 1e-10);
    const Eigen::MatrixXd rec =
        eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
    CHECK((rec - m.data()).cwiseAbs().maxCoeff() <= 1e-8 * (1.0 + scale));
    // eigenvalues descending
    for (int k = 1; k < 8; ++k) CHECK(eig.values(k - 1) >= eig.values(k));
  }
}

TEST_CASE("sym_eig rejects non-finite input") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 1) = m(1, 0) = std::nan("");
  CHECK_THROWS_AS(sym_eig(SymMatrix(m)), NumericError);
}

TEST_CASE("spectral norm") {
  CHECK(spectral_norm(SymMatrix(Eigen::MatrixXd::Zero(4, 4))) == 0.0);
  Eigen::VectorXd sigma(6);
  sigma << 1, 1, 1, -1, -1, -1;
  CHECK(spectral_norm(SymMatrix(sigma * sigma.transpose())) ==
        doctest::Approx(6.0).epsilon(1e-12));
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(spectral_norm(SymMatrix(swap)) == doctest::Approx(1.0).epsilon(1e-12));
  // agrees exactly with the extreme eigenvalues
  const SymMatrix m(random_sym(10, 42));
  const auto eig = sym_eig(m);
  CHECK(spectral_norm(m) ==
        std::max(std::abs(eig.values(0)), std::abs(eig.values(9))));
}

TEST_CASE("psd_project clamps the negative part") {
  Eigen::MatrixXd d = Eigen::Vector2d(1.0, -2.0).asDiagonal();
  const auto proj = psd_project(SymMatrix(d));
  CHECK(proj.data()(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(proj.data()(1, 1)) < 1e-12);

  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  const auto half = psd_project(SymMatrix(swap));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(half.data()(i, j) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("psd_project is idempotent and fixes PSD input") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Eigen::MatrixXd m = random_sym(7, 100 + seed);
    const SymMatrix psd(Eigen::MatrixXd(m * m.transpose()));
    const auto out = psd_project(psd);
    CHECK((out.data() - psd.data()).cwiseAbs().maxCoeff() <=
          1e-8 * (1.0 + psd.data().cwiseAbs().maxCoeff()));
    const auto once = psd_project(SymMatrix(m));
    const auto twice = psd_project(once);
    CHECK((twice.data() - once.data()).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("hinted positive-part extraction matches the full path") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Eigen::MatrixXd m = random_sym(40, 200 + seed);
    // push most of the spectrum negative so the thin-positive path triggers
    m -= 6.0 * Eigen::MatrixXd::Identity(40, 40);
    const SymMatrix sm(m);
    const PsdPart full = psd_project_hinted(sm, -1);
    const PsdPart thin = psd_project_hinted(sm, full.positive_count <= 5 ? 2 : full.positive_count);
    CHECK(full.positive_count == thin.positive_count);
    CHECK((full.projection - thin.projection).cwiseAbs().maxCoeff() < 1e-9);
    // negative-thin side
    Eigen::MatrixXd p = random_sym(40, 300 + seed);
    p += 6.0 * Eigen::MatrixXd::Identity(40, 40);
    const SymMatrix sp(p);
    const PsdPart pfull = psd_project_hinted(sp, -1);
    const PsdPart pneg = psd_project_hinted(sp, pfull.positive_count);
    CHECK(pfull.positive_count == pneg.positive_count);
    CHECK((pfull.projection - pneg.projection).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("positive-part tracker matches psd_project along a drifting sequence") {
  const int n = 60;
  Eigen::VectorXd sigma(n);
  for (int i = 0; i < n; ++i) sigma(i) = i < n / 2 ? 1.0 : -1.0;
  Eigen::MatrixXd noise = random_sym(n, 9001);
  PositivePartTracker tracker;
  // sweep a rank-one spike through the noise so eigenvalues cross zero
  for (int step = 0; step <= 40; ++step) {
    const double t = (step - 20) / 4.0;
    Eigen::MatrixXd m = t * (sigma * sigma.transpose()) / n + 0.3 * noise -
                        0.8 * Eigen::MatrixXd::Identity(n, n);
    m = 0.5 * (m + m.transpose());
    const PsdPart fast = tracker.project(m);
    const PsdPart dense = psd_project_hinted(SymMatrix(m), -1);
    CHECK(fast.positive_count == dense.positive_count);
    const double scale = 1.0 + m.cwiseAbs().maxCoeff();
    CHECK((fast.projection - dense.projection).cwiseAbs().maxCoeff() <=
          1e-7 * scale);
  }
  // degenerate inputs
  CHECK(tracker.project(Eigen::MatrixXd::Zero(8, 8)).positive_count == 0);
  PositivePartTracker fresh;
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(40, 40);
  const PsdPart all_pos = fresh.project(id);
  CHECK(all_pos.positive_count == 40);
  CHECK((all_pos.projection - id).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("second smallest eigenvalue on a complement") {
  const int n = 4;
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(n);
  e1(0) = 1.0;
  CHECK(second_smallest_eigenvalue_on_complement(
            SymMatrix(Eigen::MatrixXd::Identity(n, n)), e1) ==
        doctest::Approx(1.0).epsilon(1e-10));

  Eigen::MatrixXd d = Eigen::Vector2d(5.0, 1.0).asDiagonal();
  Eigen::Vector2d dir(1.0, 0.0);
  CHECK(second_smallest_eigenvalue_on_complement(SymMatrix(d), dir) ==
        doctest::Approx(1.0).epsilon(1e-10));

  // lambda * J restricted to the complement of a balanced sigma touches zero
  Eigen::VectorXd sigma(6);
  sigma << 1, 1, 1, -1, -1, -1;
  const Eigen::MatrixXd j = 0.7 * Eigen::MatrixXd::Ones(6, 6);
  const double lam2 = second_smallest_eigenvalue_on_complement(
      SymMatrix(j), sigma / sigma.norm());
  CHECK(std::abs(lam2) < 1e-10);

  CHECK_THROWS_AS(second_smallest_eigenvalue_on_complement(
                      SymMatrix(Eigen::MatrixXd::Identity(4, 4)),
                      Eigen::VectorXd::Constant(4, 0.9)),
                  InvalidArgs);
}
