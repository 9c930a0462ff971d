#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "rlab/diagnostics.hpp"
#include "rlab/estimators.hpp"
#include "rlab/model.hpp"

using namespace rlab;

namespace {

LabelVector swap_labels(const LabelVector& labels, int i, int j) {
  LabelVector out = labels;
  std::swap(out.values[i], out.values[j]);
  return out;
}

}  // namespace

TEST_CASE("degree profile") {
  const int n = 8;
  const auto p = ModelParams::make(n, 3, 1, 1e-300);
  const auto [mu1, mu2] = scaled_means(p);
  const Sample s = sample_gwsbm(p, 2);
  const auto [dp, dm] = degree_profile_sbm(s.graph, s.labels, 0);
  CHECK(dp == doctest::Approx((n / 2.0 - 1.0) * mu1).epsilon(1e-12));
  CHECK(dm == doctest::Approx((n / 2.0) * mu2).epsilon(1e-12));

  const WeightedGraph zero(Eigen::MatrixXd::Zero(n, n), DiagonalMode::Zero);
  const auto [zp, zm] = degree_profile_sbm(zero, s.labels, 3);
  CHECK(zp == 0.0);
  CHECK(zm == 0.0);
  CHECK_THROWS_AS(degree_profile_sbm(zero, s.labels, n), InvalidArgs);
}

TEST_CASE("degree profile distributional identities (light check)") {
  const int n = 40;
  const auto p = ModelParams::make(n, 3, 1, 1);
  const auto [mu1, mu2] = scaled_means(p);
  const int reps = 4000;
  double sum_p = 0, sumsq_p = 0, sum_m = 0, sumsq_m = 0;
  for (int r = 0; r < reps; ++r) {
    const Sample s = sample_gwsbm(p, static_cast<std::uint64_t>(r));
    const auto [dp, dm] = degree_profile_sbm(s.graph, s.labels, 0);
    sum_p += dp;
    sumsq_p += dp * dp;
    sum_m += dm;
    sumsq_m += dm * dm;
  }
  const double m_plus = (n / 2.0 - 1.0) * mu1, v_plus = (n / 2.0 - 1.0);
  const double m_minus = (n / 2.0) * mu2, v_minus = (n / 2.0);
  const double mean_p = sum_p / reps, mean_m = sum_m / reps;
  CHECK(std::abs(mean_p - m_plus) < 4.0 * std::sqrt(v_plus / reps));
  CHECK(std::abs(mean_m - m_minus) < 4.0 * std::sqrt(v_minus / reps));
  const double var_p = sumsq_p / reps - mean_p * mean_p;
  const double var_m = sumsq_m / reps - mean_m * mean_m;
  CHECK(std::abs(var_p - v_plus) < 4.0 * v_plus * std::sqrt(2.0 / reps));
  CHECK(std::abs(var_m - v_minus) < 4.0 * v_minus * std::sqrt(2.0 / reps));
}

TEST_CASE("bad pairs (two communities): noiseless, hand instance, equivalence") {
  const auto noiseless = sample_gwsbm(ModelParams::make(10, 3, 1, 1e-300), 1);
  CHECK_FALSE(bad_pairs_sbm(noiseless.graph, noiseless.labels).nonempty);

  // cross edges strong, within edges strongly negative: swapping 0 and 2 wins
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
  m(0, 1) = m(1, 0) = -10.0;
  m(2, 3) = m(3, 2) = -10.0;
  m(0, 2) = m(2, 0) = 10.0;
  m(1, 3) = m(3, 1) = 10.0;
  const WeightedGraph g(m, DiagonalMode::Zero);
  const auto sigma = LabelVector::sbm({1, 1, -1, -1});
  const auto report = bad_pairs_sbm(g, sigma);
  CHECK(report.nonempty);
  CHECK(report.count == static_cast<int>(report.pairs.size()));
  for (const auto& [i, j] : report.pairs) {
    CHECK(objective_sbm(g, sigma) < objective_sbm(g, swap_labels(sigma, i, j)));
  }

  // full equivalence with the swapped-objective oracle on random instances
  const auto p = ModelParams::make(8, 2, 0, 1);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Sample s = sample_gwsbm(p, seed);
    const auto rep = bad_pairs_sbm(s.graph, s.labels);
    const double base = objective_sbm(s.graph, s.labels);
    int oracle_count = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 4; j < 8; ++j) {
        const bool improves =
            base < objective_sbm(s.graph, swap_labels(s.labels, i, j));
        if (improves) ++oracle_count;
        const bool reported =
            std::find(rep.pairs.begin(), rep.pairs.end(),
                      std::make_pair(i, j)) != rep.pairs.end();
        CHECK(improves == reported);
      }
    CHECK(oracle_count == rep.count);
  }
}

TEST_CASE("bad vertices (two communities)") {
  const auto p = ModelParams::make(12, 3, 1, 1);
  const Sample s = sample_gwsbm(p, 4);
  const auto [plus_inf, minus_inf] = bad_vertices_sbm(s.graph, s.labels, 1e18);
  CHECK_FALSE(plus_inf.nonempty);
  CHECK_FALSE(minus_inf.nonempty);
  CHECK(plus_inf.c_n == 1e18);

  const auto noiseless = sample_gwsbm(ModelParams::make(12, 3, 1, 1e-300), 1);
  const auto [np, nm] = bad_vertices_sbm(noiseless.graph, noiseless.labels, 0.0);
  CHECK_FALSE(np.nonempty);
  CHECK_FALSE(nm.nonempty);

  CHECK(default_c_n(1.0, 100) ==
        doctest::Approx(std::sqrt(6.0 * std::log(100.0))).epsilon(1e-14));
  CHECK(default_c_n(2.0, 100) == doctest::Approx(2.0 * default_c_n(1.0, 100)));
  CHECK_THROWS_AS(bad_vertices_sbm(s.graph, s.labels, -1.0), InvalidArgs);

  // membership matches the defining inequality
  const auto [bp, bm] = bad_vertices_sbm(s.graph, s.labels, 0.5);
  for (const auto& [v, v2] : bp.pairs) {
    CHECK(v == v2);
    const auto [dp, dm] = degree_profile_sbm(s.graph, s.labels, v);
    CHECK(dp < dm - 0.5);
  }
}

TEST_CASE("bad pairs (planted set): noiseless and equivalence") {
  const auto noiseless = sample_gwpdsm(ModelParams::make(10, 3, 1, 1e-300, 0.5), 2);
  CHECK_FALSE(bad_pairs_pds(noiseless.graph, noiseless.labels).nonempty);

  const auto p = ModelParams::make(8, 2, 0, 1, 0.5);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Sample s = sample_gwpdsm(p, seed);
    const auto rep = bad_pairs_pds(s.graph, s.labels);
    const double base = objective_pds(s.graph, s.labels);
    for (int i = 0; i < 4; ++i)
      for (int j = 4; j < 8; ++j) {
        const bool improves =
            base < objective_pds(s.graph, swap_labels(s.labels, i, j));
        const bool reported =
            std::find(rep.pairs.begin(), rep.pairs.end(),
                      std::make_pair(i, j)) != rep.pairs.end();
        CHECK(improves == reported);
      }
  }
}

TEST_CASE("bad pairs imply exhaustive MLE failure (n <= 10)") {
  const auto p = ModelParams::make(8, 1.5, 0, 1);  // weak signal: failures occur
  int nonempty_seen = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Sample s = sample_gwsbm(p, seed);
    if (bad_pairs_sbm(s.graph, s.labels).nonempty) {
      ++nonempty_seen;
      const auto est = mle_sbm_exhaustive(s.graph);
      CHECK(agreement_sbm(est.labels, s.labels) < 1.0);
    }
  }
  CHECK(nonempty_seen > 0);  // the test must not pass vacuously

  const auto q = ModelParams::make(8, 1.5, 0, 1, 0.5);
  nonempty_seen = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Sample s = sample_gwpdsm(q, seed);
    if (bad_pairs_pds(s.graph, s.labels).nonempty) {
      ++nonempty_seen;
      const auto est = mle_pds_exhaustive(s.graph, 0.5);
      CHECK(agreement_pds(est.labels, s.labels) < 1.0);
    }
  }
  CHECK(nonempty_seen > 0);
}

TEST_CASE("bad-pair counts fall as the signal grows") {
  const int trials = 50;
  auto mean_count = [&](double snr_val) {
    const auto p = ModelParams::make(100, std::sqrt(8.0 * snr_val), 0, 1);
    double total = 0;
    for (std::uint64_t seed = 0; seed < trials; ++seed) {
      const Sample s = sample_gwsbm(p, seed);
      total += bad_pairs_sbm(s.graph, s.labels).count;
    }
    return total / trials;
  };
  CHECK(mean_count(0.25) > mean_count(2.0));
}

TEST_CASE("swap events") {
  const auto p = ModelParams::make(8, 3, 1, 1);
  const Sample s = sample_gwsbm(p, 9);

  // k=1 reduces exactly to the bad-pair condition and to the objective gap
  const double base = objective_sbm(s.graph, s.labels);
  for (int i = 0; i < 4; ++i)
    for (int j = 4; j < 8; ++j) {
      const auto ev = swap_event_sets_sbm(s.graph, s.labels, 1, {i}, {j});
      const double swapped = objective_sbm(s.graph, swap_labels(s.labels, i, j));
      CHECK(swapped - base ==
            doctest::Approx(4.0 * (ev.rhs - ev.lhs)).epsilon(1e-10));
      CHECK(ev.violated == (base < swapped));
    }

  // general k: the event value is invariant under complementing both sets
  const std::vector<int> sp{0, 2}, sm{5, 6};
  const auto ev = swap_event_sets_sbm(s.graph, s.labels, 2, sp, sm);
  const auto ev_c = swap_event_sets_sbm(s.graph, s.labels, 2, {1, 3}, {4, 7});
  CHECK(ev.lhs == doctest::Approx(ev_c.lhs).epsilon(1e-12));
  CHECK(ev.rhs == doctest::Approx(ev_c.rhs).epsilon(1e-12));

  // full swap is a global relabel: both sides empty sums
  const auto full =
      swap_event_sets_sbm(s.graph, s.labels, 4, {0, 1, 2, 3}, {4, 5, 6, 7});
  CHECK(full.lhs == 0.0);
  CHECK(full.rhs == 0.0);
  CHECK_FALSE(full.violated);

  // noiseless: no swap improves, any k
  const auto clean = sample_gwsbm(ModelParams::make(8, 3, 1, 1e-300), 1);
  CHECK_FALSE(swap_event_sets_sbm(clean.graph, clean.labels, 1, {0}, {4}).violated);
  CHECK_FALSE(
      swap_event_sets_sbm(clean.graph, clean.labels, 2, {0, 1}, {4, 5}).violated);

  CHECK_THROWS_AS(swap_event_sets_sbm(s.graph, s.labels, 2, {0}, {4, 5}),
                  InvalidArgs);
  CHECK_THROWS_AS(swap_event_sets_sbm(s.graph, s.labels, 1, {4}, {0}),
                  InvalidArgs);
}

TEST_CASE("joint independence of the degree statistics (empirical covariance)") {
  const int n = 40;
  const auto p = ModelParams::make(n, 3, 1, 1);
  const int reps = 10000;
  // (d_+(0\1), d_+(1\0), A_01, d_-(0), d_-(1))
  std::vector<std::array<double, 5>> obs;
  obs.reserve(reps);
  for (int r = 0; r < reps; ++r) {
    const Sample s = sample_gwsbm(p, static_cast<std::uint64_t>(r));
    std::array<double, 5> row{};
    for (int v = 0; v < n / 2; ++v) {
      if (v != 0 && v != 1) {
        row[0] += s.graph.entries(0, v);
        row[1] += s.graph.entries(1, v);
      }
    }
    row[2] = s.graph.entries(0, 1);
    for (int v = n / 2; v < n; ++v) {
      row[3] += s.graph.entries(0, v);
      row[4] += s.graph.entries(1, v);
    }
    obs.push_back(row);
  }
  const double vars[5] = {n / 2.0 - 2.0, n / 2.0 - 2.0, 1.0, n / 2.0, n / 2.0};
  std::array<double, 5> mean{};
  for (const auto& row : obs)
    for (int k = 0; k < 5; ++k) mean[k] += row[k];
  for (int k = 0; k < 5; ++k) mean[k] /= reps;
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) {
      double cov = 0;
      for (const auto& row : obs)
        cov += (row[a] - mean[a]) * (row[b] - mean[b]);
      cov /= reps - 1;
      CHECK(std::abs(cov) < 4.0 * std::sqrt(vars[a] * vars[b] / reps));
    }
  }
}

TEST_CASE("regime classifier") {
  auto sbm_at = [](double snr_target) {
    return regime(ModelParams::make(100, std::sqrt(8.0 * snr_target), 0, 1),
                  Model::Sbm);
  };
  CHECK(sbm_at(0.5).verdict == Verdict::StatImpossible);
  CHECK(sbm_at(0.99).verdict == Verdict::StatImpossible);
  CHECK(sbm_at(1.01).verdict == Verdict::StatPossibleAlgPossible);
  CHECK(sbm_at(3.0).verdict == Verdict::StatPossibleAlgPossible);

  auto pds_at = [](double snr_target) {
    return regime(
        ModelParams::make(100, std::sqrt(8.0 * snr_target), 0, 1, 0.5),
        Model::Pds);
  };
  CHECK(pds_at(1.25).verdict == Verdict::StatImpossible);   // gamma snr 0.625
  CHECK(pds_at(1.48).verdict == Verdict::StatImpossible);   // 0.74
  CHECK(pds_at(1.52).verdict == Verdict::OpenGap);          // 0.76
  CHECK(pds_at(1.8).verdict == Verdict::OpenGap);           // 0.9
  CHECK(pds_at(2.02).verdict == Verdict::StatPossibleAlgPossible);  // 1.01

  const auto r = pds_at(1.25);
  CHECK(r.model == Model::Pds);
  CHECK(r.thresholds_used.size() == 3);
  CHECK(r.thresholds_used[0].first == "gamma_snr");
  CHECK(r.thresholds_used[0].second == doctest::Approx(0.625).epsilon(1e-12));

  CHECK_THROWS_AS(regime(ModelParams::make(10, 2, 0, 1), Model::Pds), InvalidArgs);
}
